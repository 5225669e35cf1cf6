//! Complex structures, 2-forms and the complex symplectic verification engine.
//!
//! Matrices act on column vectors: column `j` of `J` is `J e_j`, and a 2-form
//! `ω` is stored as `Ω_{ij} = ω(e_i, e_j)`, so `ω(X, Y) = Xᵀ Ω Y`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::lie::LieAlgebra;
use crate::matrix::QMat;
use crate::rat::{vec_ops, QVec, Rat};
use crate::subspace::Subspace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CsError {
    #[error("J does not square to −I")]
    NotAlmostComplex,
    #[error("dimension {0} is not a multiple of 4")]
    DimensionNotMultipleOf4(usize),
    #[error("matrix shape {rows}×{cols} does not match dimension {dim}")]
    DimensionMismatch { rows: usize, cols: usize, dim: usize },
    #[error("Ω is not antisymmetric")]
    NotAntisymmetric,
    #[error("structure fails verification")]
    NotComplexSymplectic(VerifyReport),
    #[error("precondition failed: {0}")]
    Precondition(&'static str),
}

/// Builds `Σ c·e^i∧e^j` (0-based indices) as an antisymmetric matrix.
pub fn two_form(dim: usize, terms: &[(usize, usize, Rat)]) -> QMat {
    let mut m = QMat::zeros(dim, dim);
    for (i, j, c) in terms {
        m[(*i, *j)] += c;
        m[(*j, *i)] -= c;
    }
    m
}

/// A candidate pair `(J, ω)`. Shape and antisymmetry are enforced; everything
/// else is left to [`verify_cs`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CSStructure {
    j: QMat,
    omega: QMat,
}

impl CSStructure {
    pub fn new(j: QMat, omega: QMat) -> Result<Self, CsError> {
        let dim = j.rows();
        for m in [&j, &omega] {
            if m.rows() != dim || m.cols() != dim {
                return Err(CsError::DimensionMismatch { rows: m.rows(), cols: m.cols(), dim });
            }
        }
        if omega.transpose() != -&omega {
            return Err(CsError::NotAntisymmetric);
        }
        Ok(CSStructure { j, omega })
    }

    pub fn j(&self) -> &QMat {
        &self.j
    }

    pub fn omega(&self) -> &QMat {
        &self.omega
    }

    pub fn dim(&self) -> usize {
        self.j.rows()
    }

    /// `ω(x, y)`.
    pub fn pair(&self, x: &[Rat], y: &[Rat]) -> Rat {
        vec_ops::dot(x, &self.omega.mul_vec(y))
    }

    /// Pulls the structure back along the basis change whose columns are the new basis.
    pub fn change_basis(&self, p: &QMat) -> Self {
        let inv = p.inverse().expect("basis change is invertible");
        CSStructure { j: &(&inv * &self.j) * p, omega: &(&p.transpose() * &self.omega) * p }
    }
}

pub fn is_almost_complex(j: &QMat) -> bool {
    j.is_square() && (j * j) == -&QMat::identity(j.rows())
}

fn check_shape(alg: &LieAlgebra, m: &QMat) -> Result<(), CsError> {
    if m.rows() != alg.dim() || m.cols() != alg.dim() {
        return Err(CsError::DimensionMismatch { rows: m.rows(), cols: m.cols(), dim: alg.dim() });
    }
    Ok(())
}

fn check_almost_complex(alg: &LieAlgebra, j: &QMat) -> Result<(), CsError> {
    check_shape(alg, j)?;
    if !is_almost_complex(j) {
        return Err(CsError::NotAlmostComplex);
    }
    Ok(())
}

fn nijenhuis_raw(alg: &LieAlgebra, j: &QMat, x: &[Rat], y: &[Rat]) -> QVec {
    let jx = j.mul_vec(x);
    let jy = j.mul_vec(y);
    let mut out = alg.bracket(x, y);
    out = vec_ops::add(&out, &j.mul_vec(&alg.bracket(&jx, y)));
    out = vec_ops::add(&out, &j.mul_vec(&alg.bracket(x, &jy)));
    vec_ops::sub(&out, &alg.bracket(&jx, &jy))
}

/// `N_J(X,Y) = [X,Y] + J[JX,Y] + J[X,JY] − [JX,JY]`.
pub fn nijenhuis(alg: &LieAlgebra, j: &QMat, x: &[Rat], y: &[Rat]) -> Result<QVec, CsError> {
    check_almost_complex(alg, j)?;
    Ok(nijenhuis_raw(alg, j, x, y))
}

fn first_basis_pair(n: usize, mut bad: impl FnMut(usize, usize) -> bool) -> Option<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |k| (i, k))).find(|&(i, k)| bad(i, k))
}

/// First basis pair with `N_J ≠ 0`, if any.
pub fn nijenhuis_witness(alg: &LieAlgebra, j: &QMat) -> Result<Option<(usize, usize)>, CsError> {
    check_almost_complex(alg, j)?;
    let n = alg.dim();
    Ok(first_basis_pair(n, |a, b| {
        !vec_ops::is_zero(&nijenhuis_raw(alg, j, &vec_ops::unit(n, a), &vec_ops::unit(n, b)))
    }))
}

pub fn is_integrable(alg: &LieAlgebra, j: &QMat) -> Result<bool, CsError> {
    Ok(nijenhuis_witness(alg, j)?.is_none())
}

/// Nonzero components `dω(e_i,e_j,e_k)`, `i < j < k`, of the exterior derivative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeForm {
    dim: usize,
    components: BTreeMap<(usize, usize, usize), Rat>,
}

impl ThreeForm {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Value on `(e_a, e_b, e_c)` for arbitrary index order.
    pub fn get(&self, a: usize, b: usize, c: usize) -> Rat {
        if a == b || b == c || a == c {
            return Rat::zero();
        }
        let mut idx = [a, b, c];
        let mut sign = 1;
        for i in 0..3 {
            for k in 0..2 - i {
                if idx[k] > idx[k + 1] {
                    idx.swap(k, k + 1);
                    sign = -sign;
                }
            }
        }
        let v = self.components.get(&(idx[0], idx[1], idx[2])).cloned().unwrap_or_default();
        if sign < 0 { -v } else { v }
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Rat)> {
        self.components.iter()
    }
}

/// `dω(e_i,e_j,e_k) = −Σ_cyc ω([e_i,e_j], e_k)`.
pub fn d_two_form(alg: &LieAlgebra, omega: &QMat) -> ThreeForm {
    let n = alg.dim();
    let w = |v: &QVec, k: usize| -> Rat {
        (0..n).filter(|&a| !v[a].is_zero()).map(|a| &v[a] * &omega[(a, k)]).sum()
    };
    let mut components = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let s = w(&alg.bracket_basis(i, j), k)
                    + w(&alg.bracket_basis(j, k), i)
                    + w(&alg.bracket_basis(k, i), j);
                if !s.is_zero() {
                    components.insert((i, j, k), -s);
                }
            }
        }
    }
    ThreeForm { dim: n, components }
}

/// First triple `i < j < k` with `dω ≠ 0`, if any.
pub fn closure_witness(alg: &LieAlgebra, omega: &QMat) -> Option<(usize, usize, usize)> {
    d_two_form(alg, omega).nonzero().next().map(|(t, _)| *t)
}

pub fn is_closed(alg: &LieAlgebra, omega: &QMat) -> bool {
    d_two_form(alg, omega).is_zero()
}

/// `ω(JX,Y) = ω(X,JY)`, i.e. `JᵀΩ = ΩJ`.
pub fn is_j_symmetric(j: &QMat, omega: &QMat) -> bool {
    &j.transpose() * omega == omega * j
}

/// Outcome of checking every defining condition; nothing short-circuits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub almost_complex: bool,
    pub integrable: bool,
    pub nijenhuis_witness: Option<(usize, usize)>,
    pub closed: bool,
    pub closure_witness: Option<(usize, usize, usize)>,
    pub nondegenerate: bool,
    pub j_symmetric: bool,
    pub verdict: bool,
}

pub fn verify_cs(alg: &LieAlgebra, s: &CSStructure) -> Result<VerifyReport, CsError> {
    let n = alg.dim();
    if !n.is_multiple_of(4) {
        return Err(CsError::DimensionNotMultipleOf4(n));
    }
    check_shape(alg, &s.j)?;
    let almost_complex = is_almost_complex(&s.j);
    let nij = first_basis_pair(n, |a, b| {
        !vec_ops::is_zero(&nijenhuis_raw(alg, &s.j, &vec_ops::unit(n, a), &vec_ops::unit(n, b)))
    });
    let integrable = almost_complex && nij.is_none();
    let closure = closure_witness(alg, &s.omega);
    let nondegenerate = !s.omega.det().is_zero();
    let j_symmetric = is_j_symmetric(&s.j, &s.omega);
    let closed = closure.is_none();
    Ok(VerifyReport {
        almost_complex,
        integrable,
        nijenhuis_witness: nij,
        closed,
        closure_witness: closure,
        nondegenerate,
        j_symmetric,
        verdict: almost_complex && integrable && closed && nondegenerate && j_symmetric,
    })
}

/// `ω_C = ω − i·ω(J·,·)` as its real and imaginary matrices.
pub fn complexify(alg: &LieAlgebra, s: &CSStructure) -> Result<(QMat, QMat), CsError> {
    let report = verify_cs(alg, s)?;
    if !report.verdict {
        return Err(CsError::NotComplexSymplectic(report));
    }
    Ok((s.omega.clone(), -&(&s.j.transpose() * &s.omega)))
}

/// `[X,Y] = [JX,JY]` on all basis pairs.
pub fn is_abelian_j(alg: &LieAlgebra, j: &QMat) -> Result<bool, CsError> {
    check_almost_complex(alg, j)?;
    let n = alg.dim();
    let cols = j.columns();
    Ok(first_basis_pair(n, |a, b| alg.bracket_basis(a, b) != alg.bracket(&cols[a], &cols[b])).is_none())
}

/// `J[X,Y] = [JX,Y]` on all basis pairs (both orders).
pub fn is_parallelizable_j(alg: &LieAlgebra, j: &QMat) -> Result<bool, CsError> {
    check_almost_complex(alg, j)?;
    let n = alg.dim();
    let cols = j.columns();
    let ok = (0..n).all(|a| {
        (0..n).all(|b| {
            j.mul_vec(&alg.bracket_basis(a, b)) == alg.bracket(&cols[a], &vec_ops::unit(n, b))
        })
    });
    Ok(ok)
}

/// `{Y : ω(Y, U) = 0 for all U ∈ S}`.
pub fn symplectic_orthogonal(omega: &QMat, s: &Subspace) -> Subspace {
    if s.is_zero() {
        return Subspace::full(omega.rows());
    }
    // ω(Y,U) = Yᵀ Ω U, so each row is (Ω U)ᵀ
    let rows: Vec<QVec> = s.vectors().iter().map(|u| omega.mul_vec(u)).collect();
    Subspace::kernel_of(&QMat::from_rows(rows))
}

/// The items of the structure theorem for Abelian complex structures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianJReport {
    pub g1_perp_abelian: bool,
    pub g1j_perp_abelian: bool,
    pub g1j_perp_j_invariant: bool,
    pub center_j_invariant: bool,
    pub center_in_g1j_perp: bool,
    pub j_commutes_on_g1j_perp: bool,
    /// Present for 2-step nilpotent algebras.
    pub two_step: Option<TwoStepItems>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoStepItems {
    pub g1_isotropic: bool,
    pub g1j_isotropic_j_invariant: bool,
    pub g1j_in_center: bool,
    pub center_in_g1j_perp: bool,
}

impl AbelianJReport {
    pub fn all_hold(&self) -> bool {
        let base = self.g1_perp_abelian
            && self.g1j_perp_abelian
            && self.g1j_perp_j_invariant
            && self.center_j_invariant
            && self.center_in_g1j_perp
            && self.j_commutes_on_g1j_perp;
        base && self.two_step.is_none_or(|t| {
            t.g1_isotropic && t.g1j_isotropic_j_invariant && t.g1j_in_center && t.center_in_g1j_perp
        })
    }
}

pub fn abelian_j_report(alg: &LieAlgebra, s: &CSStructure) -> Result<AbelianJReport, CsError> {
    let report = verify_cs(alg, s)?;
    if !report.verdict {
        return Err(CsError::NotComplexSymplectic(report));
    }
    if !is_abelian_j(alg, &s.j)? {
        return Err(CsError::Precondition("J is not Abelian"));
    }
    let n = alg.dim();
    let j = &s.j;
    let om = &s.omega;
    let g1 = alg.commutator_ideal();
    let g1j = g1.sum(&g1.image(j));
    let g1_perp = symplectic_orthogonal(om, &g1);
    let g1j_perp = symplectic_orthogonal(om, &g1j);
    let center = alg.center();
    let j_commutes = g1j_perp.vectors().iter().all(|x| {
        (0..n).all(|b| {
            let y = vec_ops::unit(n, b);
            j.mul_vec(&alg.bracket(x, &y)) == alg.bracket(x, &j.mul_vec(&y))
        })
    });
    let two_step = (alg.lower_central_series().step == Some(2)).then(|| TwoStepItems {
        g1_isotropic: g1.is_isotropic(om),
        g1j_isotropic_j_invariant: g1j.is_isotropic(om) && g1j.is_invariant(j),
        g1j_in_center: center.contains_subspace(&g1j),
        center_in_g1j_perp: g1j_perp.contains_subspace(&center),
    });
    Ok(AbelianJReport {
        g1_perp_abelian: alg.is_abelian_subspace(&g1_perp),
        g1j_perp_abelian: alg.is_abelian_subspace(&g1j_perp),
        g1j_perp_j_invariant: g1j_perp.is_invariant(j),
        center_j_invariant: center.is_invariant(j),
        center_in_g1j_perp: g1j_perp.contains_subspace(&center),
        j_commutes_on_g1j_perp: j_commutes,
        two_step,
    })
}
