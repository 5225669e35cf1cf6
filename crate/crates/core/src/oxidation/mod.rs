//! Complex symplectic oxidation: from `(ḡ, J̄, ω̄)` of dimension `4n − 4` and
//! data `(f, S, τ)` to `g = V ⊕ ḡ ⊕ V*` of dimension `4n`.
//!
//! Basis of `g`: `(v_1, v_2, ē_1 .. ē_d, v^1, v^2)` with `v_2 = I v_1`.
//! Covectors on `ḡ` are coordinate vectors in the dual basis. For an
//! endomorphism `f` we write `(f.ω̄)(X,Y) = ω̄(fX,Y) + ω̄(X,fY)`, so that
//! `β = −f.ω̄` is what closedness of `ω` forces.

mod generator;
#[cfg(test)]
mod tests;

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Zero};

use crate::csgeom::{is_abelian_j, verify_cs, CSStructure, CsError, VerifyReport};
use crate::lie::LieAlgebra;
use crate::matrix::QMat;
use crate::rat::{frac, vec_ops, QVec, Rat};

pub use generator::{omega0_alternating, steplength_generator, upper_central_series};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OxError {
    #[error("shape mismatch: {0}")]
    Shape(&'static str),
    #[error("ω̄ is degenerate")]
    DegenerateOmega,
    #[error("parameter out of range: {0}")]
    ParameterRange(&'static str),
    #[error("stage {stage}: base has dimension {got}, expected {expected}")]
    ChainMismatch { stage: usize, expected: usize, got: usize },
    #[error(transparent)]
    Cs(#[from] CsError),
}

/// The tensors `(f_1, f_2, S_11, S_12, S_22, τ(v_1,v_2))` on a base of dimension `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OxidationTensors {
    pub f1: QMat,
    pub f2: QMat,
    pub s11: QVec,
    pub s12: QVec,
    pub s22: QVec,
    /// Coordinates of `τ(v_1, v_2)` in `(v^1, v^2)`.
    pub tau12: QVec,
}

impl OxidationTensors {
    pub fn zero(d: usize) -> Self {
        OxidationTensors {
            f1: QMat::zeros(d, d),
            f2: QMat::zeros(d, d),
            s11: vec_ops::zeros(d),
            s12: vec_ops::zeros(d),
            s22: vec_ops::zeros(d),
            tau12: vec_ops::zeros(2),
        }
    }

    fn base_dim(&self) -> Result<usize, OxError> {
        let d = self.f1.rows();
        let square = |m: &QMat| m.rows() == d && m.cols() == d;
        if !square(&self.f1) || !square(&self.f2) {
            return Err(OxError::Shape("f_1 and f_2 must be square of the base dimension"));
        }
        if [&self.s11, &self.s12, &self.s22].iter().any(|s| s.len() != d) {
            return Err(OxError::Shape("S_jk must be covectors on the base"));
        }
        if self.tau12.len() != 2 {
            return Err(OxError::Shape("τ(v_1, v_2) has two coordinates"));
        }
        Ok(d)
    }
}

/// Base `(ḡ, J̄, ω̄)` with oxidation tensors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OxidationData {
    pub base: LieAlgebra,
    pub base_cs: CSStructure,
    pub tensors: OxidationTensors,
}

impl OxidationData {
    pub fn new(base: LieAlgebra, base_cs: CSStructure, tensors: OxidationTensors) -> Result<Self, OxError> {
        let d = tensors.base_dim()?;
        if base.dim() != d || base_cs.dim() != d {
            return Err(OxError::Shape("base algebra, structure and tensors must share a dimension"));
        }
        Ok(OxidationData { base, base_cs, tensors })
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }
}

/// `A_12`, `ν(v_1, v_2)` and `β = (β_1, β_2)` with `β(X,Y) = Σ β_k(X,Y) v^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedTensors {
    pub a12: QVec,
    pub nu12: QVec,
    pub beta: [QMat; 2],
}

/// Which factor multiplies `J̄(S_11 + S_22)^♯` in `ν(v_1, v_2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NuFactor {
    /// `ν = J̄(S_11 + S_22)^♯`.
    #[default]
    Corrected,
    /// Half of it, as in the formula before the erratum; kept to show it fails.
    Uncorrected,
}

/// `♯φ` with `ω̄(♯φ, ·) = φ`.
pub fn sharp(omega: &QMat, phi: &[Rat]) -> Result<QVec, OxError> {
    if omega.det().is_zero() {
        return Err(OxError::DegenerateOmega);
    }
    omega.transpose().solve(phi).ok_or(OxError::DegenerateOmega)
}

/// `f.ω̄ = ω̄(f·,·) + ω̄(·,f·)` as a matrix.
pub fn act_on_form(f: &QMat, omega: &QMat) -> QMat {
    &(&f.transpose() * omega) + &(omega * f)
}

/// `f ∈ sp(ḡ, J̄, ω̄)`: commutes with `J̄` and `f.ω̄ = 0`.
pub fn in_sp(f: &QMat, j: &QMat, omega: &QMat) -> bool {
    f * j == j * f && act_on_form(f, omega).is_zero()
}

/// `(f^{J̄}, f^{−J̄}) = ((f − J̄fJ̄)/2, (f + J̄fJ̄)/2)`.
pub fn j_split(f: &QMat, j: &QMat) -> (QMat, QMat) {
    let jfj = &(j * f) * j;
    let half = frac(1, 2);
    ((f - &jfj).scale(&half), (f + &jfj).scale(&half))
}

pub fn derive_tensors(d: &OxidationData) -> Result<DerivedTensors, OxError> {
    derive_tensors_with(d, NuFactor::Corrected)
}

pub fn derive_tensors_with(d: &OxidationData, factor: NuFactor) -> Result<DerivedTensors, OxError> {
    let t = &d.tensors;
    let (j, omega) = (d.base_cs.j(), d.base_cs.omega());
    let sum = vec_ops::add(&t.s11, &t.s22);
    let mut nu12 = j.mul_vec(&sharp(omega, &sum)?);
    if factor == NuFactor::Uncorrected {
        nu12 = vec_ops::scale(&nu12, &frac(1, 2));
    }
    // A = ½ ν ⌟ ω̄
    let a12 = vec_ops::scale(&omega.transpose().mul_vec(&nu12), &frac(1, 2));
    let beta = [-&act_on_form(&t.f1, omega), -&act_on_form(&t.f2, omega)];
    Ok(DerivedTensors { a12, nu12, beta })
}

/// Index of `v^k` in a `g` of dimension `d + 4`.
fn dual_index(d: usize, k: usize) -> usize {
    d + 2 + k
}

pub fn build_oxidation(d: &OxidationData) -> Result<(LieAlgebra, CSStructure), OxError> {
    build_oxidation_with(d, NuFactor::Corrected)
}

pub fn build_oxidation_with(d: &OxidationData, factor: NuFactor) -> Result<(LieAlgebra, CSStructure), OxError> {
    let t = &d.tensors;
    let dim_base = d.base_dim();
    let n = dim_base + 4;
    let der = derive_tensors_with(d, factor)?;
    let g = [
        [t.s11.clone(), vec_ops::add(&t.s12, &der.a12)],
        [vec_ops::sub(&t.s12, &der.a12), t.s22.clone()],
    ];
    let f = [&t.f1, &t.f2];
    let bar = |i: usize| (2..dim_base + 2).contains(&i);
    // `[b_a, b_b]` for `a < b`
    let upper = |a: usize, b: usize| -> QVec {
        let mut v = vec_ops::zeros(n);
        if b < 2 {
            v[2..dim_base + 2].clone_from_slice(&der.nu12);
            for k in 0..2 {
                v[dual_index(dim_base, k)] = t.tau12[k].clone();
            }
        } else if a < 2 && bar(b) {
            let x = b - 2;
            v[2..dim_base + 2].clone_from_slice(&f[a].column(x));
            for k in 0..2 {
                v[dual_index(dim_base, k)] = g[a][k][x].clone();
            }
        } else if bar(a) && bar(b) {
            let (x, y) = (a - 2, b - 2);
            v[2..dim_base + 2].clone_from_slice(&d.base.bracket_basis(x, y));
            for k in 0..2 {
                v[dual_index(dim_base, k)] = der.beta[k][(x, y)].clone();
            }
        }
        v
    };
    let alg = LieAlgebra::from_fn(n, |a, b| match a.cmp(&b) {
        Ordering::Less => upper(a, b),
        Ordering::Greater => vec_ops::neg(&upper(b, a)),
        Ordering::Equal => vec_ops::zeros(n),
    });

    let mut i_v = QMat::zeros(2, 2);
    i_v[(1, 0)] = Rat::one();
    i_v[(0, 1)] = -Rat::one();
    let j = QMat::block_diag(&[i_v.clone(), d.base_cs.j().clone(), i_v.transpose()]);
    let mut omega = QMat::zeros(n, n);
    omega.set_block(2, 2, d.base_cs.omega());
    for k in 0..2 {
        omega[(dual_index(dim_base, k), k)] = Rat::one();
        omega[(k, dual_index(dim_base, k))] = -Rat::one();
    }
    Ok((alg, CSStructure::new(j, omega)?))
}

/// Outcome of validating oxidation data by direct verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OxidationReport {
    pub base_valid: bool,
    /// Index of an `f_j` that is not a derivation of `ḡ`.
    pub non_derivation: Option<usize>,
    /// `f_2 − J̄f_1 ∈ sp(ḡ, J̄, ω̄)`.
    pub f_difference_in_sp: bool,
    /// `f_j^{J̄}.ω̄ = 0` for both `j`.
    pub f_j_parts_preserve_omega: bool,
    pub jacobi_witness: Option<(usize, usize, usize)>,
    pub cs: VerifyReport,
    pub verdict: bool,
}

pub fn validate_oxidation(d: &OxidationData) -> Result<OxidationReport, OxError> {
    validate_oxidation_with(d, NuFactor::Corrected)
}

pub fn validate_oxidation_with(d: &OxidationData, factor: NuFactor) -> Result<OxidationReport, OxError> {
    let (j, omega) = (d.base_cs.j(), d.base_cs.omega());
    let t = &d.tensors;
    let base_valid = d.base.jacobi_violation().is_none()
        && (d.base_dim() == 0 || verify_cs(&d.base, &d.base_cs)?.verdict);
    let non_derivation = [&t.f1, &t.f2].iter().position(|f| !d.base.is_derivation(f));
    let f_difference_in_sp = in_sp(&(&t.f2 - &(j * &t.f1)), j, omega);
    let f_j_parts_preserve_omega =
        [&t.f1, &t.f2].iter().all(|f| act_on_form(&j_split(f, j).0, omega).is_zero());
    let (alg, s) = build_oxidation_with(d, factor)?;
    let jacobi_witness = alg.jacobi_violation().map(|(a, b, c, _)| (a, b, c));
    let cs = verify_cs(&alg, &s)?;
    let verdict = base_valid
        && non_derivation.is_none()
        && f_difference_in_sp
        && jacobi_witness.is_none()
        && cs.verdict;
    Ok(OxidationReport {
        base_valid,
        non_derivation,
        f_difference_in_sp,
        f_j_parts_preserve_omega,
        jacobi_witness,
        cs,
        verdict,
    })
}

/// The criterion for `J` on the oxidation to be Abelian.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianJConditions {
    pub base_abelian: bool,
    /// `f_2^{J̄} = −J̄f_1^{J̄}`.
    pub invariant_parts: bool,
    /// `f_2^{−J̄} = J̄f_1^{−J̄}`.
    pub anti_invariant_parts: bool,
    /// `f_1^{J̄} ∈ sp(ḡ, J̄, ω̄)`.
    pub f1_j_in_sp: bool,
    /// `f_2^{J̄} ∈ sp(ḡ, J̄, ω̄)`; implied by the previous two.
    pub f2_j_in_sp: bool,
    /// `S_12 = −½(S_11 − S_22)∘J̄`.
    pub s12_relation: bool,
    pub verdict: bool,
}

pub fn abelian_j_conditions(d: &OxidationData) -> AbelianJConditions {
    let (j, omega) = (d.base_cs.j(), d.base_cs.omega());
    let t = &d.tensors;
    let base_abelian = d.base_dim() == 0 || is_abelian_j(&d.base, j).unwrap_or(false);
    let (f1p, f1m) = j_split(&t.f1, j);
    let (f2p, f2m) = j_split(&t.f2, j);
    let invariant_parts = f2p == -&(j * &f1p);
    let anti_invariant_parts = f2m == j * &f1m;
    let f1_j_in_sp = in_sp(&f1p, j, omega);
    let f2_j_in_sp = in_sp(&f2p, j, omega);
    // (S_11 − S_22)∘J̄ has coordinates J̄ᵀ(S_11 − S_22)
    let rhs = vec_ops::scale(&j.transpose().mul_vec(&vec_ops::sub(&t.s11, &t.s22)), &frac(-1, 2));
    let s12_relation = t.s12 == rhs;
    AbelianJConditions {
        base_abelian,
        invariant_parts,
        anti_invariant_parts,
        f1_j_in_sp,
        f2_j_in_sp,
        s12_relation,
        verdict: base_abelian && invariant_parts && anti_invariant_parts && f1_j_in_sp && s12_relation,
    }
}

/// Per-stage record of an iterated oxidation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageOutcome {
    pub valid: bool,
    pub abelian_conditions: bool,
    pub abelian_j: bool,
    /// The centre of the stage output is `J`-invariant.
    pub center_j_invariant: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IteratedOxidation {
    pub algebra: LieAlgebra,
    pub structure: CSStructure,
    pub stages: Vec<StageOutcome>,
}

impl IteratedOxidation {
    pub fn all_valid(&self) -> bool {
        self.stages.iter().all(|s| s.valid)
    }

    /// Abelian `J` predicted by the per-stage criteria.
    pub fn predicted_abelian(&self) -> bool {
        self.stages.iter().all(|s| s.abelian_conditions)
    }
}

/// Oxidises the `0`-dimensional algebra repeatedly; stage `k` (1-based) must
/// carry tensors on a base of dimension `4k − 4`, the previous output.
pub fn iterate_oxidation(stages: &[OxidationTensors]) -> Result<IteratedOxidation, OxError> {
    let mut alg = LieAlgebra::abelian(0);
    let mut cs = CSStructure::new(QMat::zeros(0, 0), QMat::zeros(0, 0))?;
    let mut outcomes = Vec::with_capacity(stages.len());
    for (k, tensors) in stages.iter().enumerate() {
        let expected = 4 * k;
        let got = tensors.base_dim()?;
        if got != expected {
            return Err(OxError::ChainMismatch { stage: k + 1, expected, got });
        }
        let data = OxidationData::new(alg, cs, tensors.clone())?;
        let report = validate_oxidation(&data)?;
        let abelian_conditions = abelian_j_conditions(&data).verdict;
        let (next_alg, next_cs) = build_oxidation(&data)?;
        let center = next_alg.center();
        outcomes.push(StageOutcome {
            valid: report.verdict,
            abelian_conditions,
            abelian_j: is_abelian_j(&next_alg, next_cs.j()).unwrap_or(false),
            center_j_invariant: center.is_invariant(next_cs.j()),
        });
        alg = next_alg;
        cs = next_cs;
    }
    Ok(IteratedOxidation { algebra: alg, structure: cs, stages: outcomes })
}

/// Zero tensors on a base of dimension `d`, for the trivial oxidation.
pub fn trivial_stage(d: usize) -> OxidationTensors {
    OxidationTensors::zero(d)
}

