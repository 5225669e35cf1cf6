//! JSON file formats. Indices are 1-based and rationals are strings `"p"` or
//! `"p/q"` throughout.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use csalg_core::cotangent::{Alpha, Check, ConditionReport, CotangentData};
use csalg_core::csgeom::{CSStructure, VerifyReport};
use csalg_core::lattice::LatticeReport;
use csalg_core::lie::{BracketEntry, Fingerprint, LieAlgebra};
use csalg_core::oxidation::{AbelianJConditions, OxidationData, OxidationReport, OxidationTensors};
use csalg_core::rat::{parse_rat, QVec, Rat};
use csalg_core::QMat;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Rational(#[from] csalg_core::rat::ParseRatError),
    #[error("{0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> FormatError {
    FormatError::Invalid(msg.into())
}

pub type Matrix = Vec<Vec<String>>;

pub fn rat_to_string(x: &Rat) -> String {
    x.to_string()
}

pub fn vec_to_json(v: &[Rat]) -> Vec<String> {
    v.iter().map(rat_to_string).collect()
}

pub fn vec_from_json(v: &[String]) -> Result<QVec, FormatError> {
    v.iter().map(|s| parse_rat(s).map_err(FormatError::from)).collect()
}

pub fn matrix_to_json(m: &QMat) -> Matrix {
    m.to_rows().iter().map(|r| vec_to_json(r)).collect()
}

pub fn matrix_from_json(m: &Matrix) -> Result<QMat, FormatError> {
    let cols = m.first().map_or(0, Vec::len);
    if m.iter().any(|r| r.len() != cols) {
        return Err(invalid("matrix rows have different lengths"));
    }
    if m.is_empty() {
        return Ok(QMat::zeros(0, 0));
    }
    let rows = m.iter().map(|r| vec_from_json(r)).collect::<Result<Vec<_>, _>>()?;
    Ok(QMat::from_rows(rows))
}

fn square_from_json(m: &Matrix, n: usize, what: &str) -> Result<QMat, FormatError> {
    let q = if m.is_empty() { QMat::zeros(n, n) } else { matrix_from_json(m)? };
    if q.rows() != n || q.cols() != n {
        return Err(invalid(format!("{what} must be {n}×{n}")));
    }
    Ok(q)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub brackets: Vec<BracketJson>,
}

impl AlgebraJson {
    pub fn from_algebra(alg: &LieAlgebra) -> Self {
        let brackets = alg
            .entries()
            .into_iter()
            .map(|e| BracketJson { i: e.i + 1, j: e.j + 1, k: e.k + 1, c: rat_to_string(&e.c) })
            .collect();
        AlgebraJson { dim: alg.dim(), brackets }
    }

    /// Applies antisymmetric closure, rejects duplicates and checks Jacobi.
    pub fn to_algebra(&self) -> Result<LieAlgebra, FormatError> {
        let mut entries = Vec::with_capacity(self.brackets.len());
        for b in &self.brackets {
            if b.i == 0 || b.j == 0 || b.k == 0 {
                return Err(invalid("bracket indices are 1-based"));
            }
            entries.push(BracketEntry::new(b.i - 1, b.j - 1, b.k - 1, parse_rat(&b.c)?));
        }
        LieAlgebra::new(self.dim, &entries).map_err(|e| invalid(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureJson {
    #[serde(rename = "J")]
    pub j: Matrix,
    #[serde(rename = "Omega")]
    pub omega: Matrix,
}

impl StructureJson {
    pub fn from_structure(s: &CSStructure) -> Self {
        StructureJson { j: matrix_to_json(s.j()), omega: matrix_to_json(s.omega()) }
    }

    pub fn to_structure(&self) -> Result<CSStructure, FormatError> {
        let j = matrix_from_json(&self.j)?;
        let omega = square_from_json(&self.omega, j.rows(), "Omega")?;
        CSStructure::new(j, omega).map_err(|e| invalid(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaEntryJson {
    pub i: usize,
    pub j: usize,
    pub covector: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CotangentJson {
    pub h: AlgebraJson,
    #[serde(rename = "J")]
    pub j: Matrix,
    pub rho: Vec<Matrix>,
    pub alpha: Vec<AlphaEntryJson>,
}

impl CotangentJson {
    pub fn from_data(d: &CotangentData) -> Self {
        let m = d.half_dim();
        let mut alpha = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                let v = d.alpha().get(i, j);
                if v.iter().any(|x| *x != Rat::from_integer(0.into())) {
                    alpha.push(AlphaEntryJson { i: i + 1, j: j + 1, covector: vec_to_json(v) });
                }
            }
        }
        CotangentJson {
            h: AlgebraJson::from_algebra(d.h()),
            j: matrix_to_json(d.jh()),
            rho: d.rho().iter().map(matrix_to_json).collect(),
            alpha,
        }
    }

    pub fn to_data(&self) -> Result<CotangentData, FormatError> {
        let h = self.h.to_algebra()?;
        let m = h.dim();
        let jh = square_from_json(&self.j, m, "J")?;
        let rho = if self.rho.is_empty() {
            vec![QMat::zeros(m, m); m]
        } else {
            self.rho.iter().map(|r| square_from_json(r, m, "rho")).collect::<Result<Vec<_>, _>>()?
        };
        let mut alpha = Alpha::zero(m);
        for e in &self.alpha {
            if e.i == 0 || e.j == 0 || e.i > m || e.j > m || e.i == e.j {
                return Err(invalid("alpha indices must be distinct and in 1..=dim h"));
            }
            let v = vec_from_json(&e.covector)?;
            if v.len() != m {
                return Err(invalid("alpha covectors have dim h entries"));
            }
            alpha.set(e.i - 1, e.j - 1, v);
        }
        CotangentData::new(h, jh, rho, alpha).map_err(|e| invalid(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorsJson {
    pub f1: Matrix,
    pub f2: Matrix,
    pub s11: Vec<String>,
    pub s12: Vec<String>,
    pub s22: Vec<String>,
    pub tau12: Vec<String>,
}

impl TensorsJson {
    pub fn from_tensors(t: &OxidationTensors) -> Self {
        TensorsJson {
            f1: matrix_to_json(&t.f1),
            f2: matrix_to_json(&t.f2),
            s11: vec_to_json(&t.s11),
            s12: vec_to_json(&t.s12),
            s22: vec_to_json(&t.s22),
            tau12: vec_to_json(&t.tau12),
        }
    }

    /// `d` is the base dimension, needed when the matrices are empty.
    pub fn to_tensors(&self, d: usize) -> Result<OxidationTensors, FormatError> {
        Ok(OxidationTensors {
            f1: square_from_json(&self.f1, d, "f1")?,
            f2: square_from_json(&self.f2, d, "f2")?,
            s11: vec_from_json(&self.s11)?,
            s12: vec_from_json(&self.s12)?,
            s22: vec_from_json(&self.s22)?,
            tau12: vec_from_json(&self.tau12)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OxidationJson {
    pub base: AlgebraJson,
    pub base_structure: StructureJson,
    #[serde(flatten)]
    pub tensors: TensorsJson,
}

impl OxidationJson {
    pub fn from_data(d: &OxidationData) -> Self {
        OxidationJson {
            base: AlgebraJson::from_algebra(&d.base),
            base_structure: StructureJson::from_structure(&d.base_cs),
            tensors: TensorsJson::from_tensors(&d.tensors),
        }
    }

    pub fn to_data(&self) -> Result<OxidationData, FormatError> {
        let base = self.base.to_algebra()?;
        let cs = self.base_structure.to_structure()?;
        let t = self.tensors.to_tensors(base.dim())?;
        OxidationData::new(base, cs, t).map_err(|e| invalid(e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StagesJson {
    pub stages: Vec<TensorsJson>,
}

impl StagesJson {
    pub fn to_stages(&self) -> Result<Vec<OxidationTensors>, FormatError> {
        self.stages
            .iter()
            .enumerate()
            .map(|(k, s)| s.to_tensors(if s.f1.is_empty() { 4 * k } else { s.f1.len() }))
            .collect()
    }
}

fn pair(w: Option<(usize, usize)>) -> Value {
    w.map_or(Value::Null, |(a, b)| json!([a + 1, b + 1]))
}

fn triple(w: Option<(usize, usize, usize)>) -> Value {
    w.map_or(Value::Null, |(a, b, c)| json!([a + 1, b + 1, c + 1]))
}

pub fn verify_report_json(r: &VerifyReport) -> Value {
    json!({
        "almost_complex": r.almost_complex,
        "integrable": r.integrable,
        "nijenhuis_witness": pair(r.nijenhuis_witness),
        "closed": r.closed,
        "closure_witness": triple(r.closure_witness),
        "nondegenerate": r.nondegenerate,
        "j_symmetric": r.j_symmetric,
        "verdict": r.verdict,
    })
}

fn check_json(c: &Check) -> Value {
    json!({
        "holds": c.holds,
        "witness": c.witness.as_ref().map(|w| w.iter().map(|i| i + 1).collect::<Vec<_>>()),
    })
}

pub fn conditions_json(r: &ConditionReport) -> Value {
    let names = ["cocycle", "morphism", "bianchi", "alpha_type", "rho_omega", "rho_type"];
    let mut map = serde_json::Map::new();
    for (name, c) in names.iter().zip(r.checks()) {
        map.insert((*name).to_string(), check_json(c));
    }
    map.insert("all_hold".to_string(), Value::Bool(r.all_hold()));
    Value::Object(map)
}

pub fn oxidation_report_json(r: &OxidationReport) -> Value {
    json!({
        "base_valid": r.base_valid,
        "non_derivation": r.non_derivation.map(|j| j + 1),
        "f_difference_in_sp": r.f_difference_in_sp,
        "f_j_parts_preserve_omega": r.f_j_parts_preserve_omega,
        "jacobi_witness": triple(r.jacobi_witness),
        "cs": verify_report_json(&r.cs),
        "verdict": r.verdict,
    })
}

pub fn abelian_conditions_json(c: &AbelianJConditions) -> Value {
    json!({
        "base_abelian": c.base_abelian,
        "invariant_parts": c.invariant_parts,
        "anti_invariant_parts": c.anti_invariant_parts,
        "f1_j_in_sp": c.f1_j_in_sp,
        "f2_j_in_sp": c.f2_j_in_sp,
        "s12_relation": c.s12_relation,
        "verdict": c.verdict,
    })
}

fn big_number(x: &impl ToString) -> Value {
    serde_json::from_str(&x.to_string()).expect("integers are valid JSON numbers")
}

fn integer_matrix(m: &QMat) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(big_number).collect())).collect())
}

pub fn lattice_report_json(r: &LatticeReport) -> Value {
    json!({
        "n": r.n,
        "ell": r.ell,
        "q": r.q.iter().map(big_number).collect::<Vec<_>>(),
        "a": r.a_seq.iter().map(big_number).collect::<Vec<_>>(),
        "Bq": integer_matrix(&r.bq),
        "Bl": integer_matrix(&r.bl),
        "t_ell": r.t_ell_approx,
        "distinct_roots": r.distinct_roots,
        "char_bl_matches": r.char_bl_matches,
        "char_phi_matches": r.char_phi_matches,
        "case": match &r.existence {
            csalg_core::almost_abelian::Existence::Yes(c) => Value::String(c.label().to_string()),
            csalg_core::almost_abelian::Existence::No(_) => Value::Null,
        },
    })
}

pub fn fingerprint_json(f: &Fingerprint) -> Value {
    json!({
        "dim": f.dim,
        "lower_central_dims": f.lower_central_dims,
        "derived_dims": f.derived_dims,
        "center_dim": f.center_dim,
        "unimodular": f.unimodular,
        "generic_ad_profile": f.generic_ad_profile.iter().map(|p| json!({
            "factor_degree": p.factor_degree,
            "n_real_roots": p.n_real_roots,
            "is_zero": p.is_zero,
            "block_sizes": p.block_sizes,
        })).collect::<Vec<_>>(),
    })
}

pub fn algebra_value(alg: &LieAlgebra) -> Value {
    serde_json::to_value(AlgebraJson::from_algebra(alg)).expect("plain data")
}

pub fn structure_value(s: &CSStructure) -> Value {
    serde_json::to_value(StructureJson::from_structure(s)).expect("plain data")
}
