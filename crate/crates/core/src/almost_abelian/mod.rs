//! Almost Abelian algebras `R^{4n-1} ⋊_f R` with their complex symplectic
//! structures: builders, block-form criteria, equivalence moves, the canonical
//! families and the existence classification.

mod blockform;
mod classify;
mod equivalence;
mod families;
pub mod sample;

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::csgeom::{two_form, CSStructure, CsError};
use crate::lie::{BracketEntry, LieAlgebra};
use crate::matrix::QMat;
use crate::rat::{vec_ops, QVec, Rat};

pub use blockform::{
    decompose_cs, thm_complex_blockform, thm_complex_blockform_with_ideal, thm_symplectic_blockform,
    thm_symplectic_blockform_with_ideal, CsSplitting, ComplexBlockForm, SymplecticBlockForm,
};
pub use classify::{
    classify_existence, classify_existence_oracle, sp_profile_admissible, uniqueness_hint, CaseLabel,
    Existence, Uniqueness, Violation,
};
pub use equivalence::{apply_equivalence, EquivalenceMove, EquivalenceResult};
pub use families::{
    canonical_family_build, inner_size, jt_chain_even, jt_chain_odd, jt_minus_one, CanonicalFParams, Family,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AaError {
    #[error("f must be square of size 4n-1, got {rows}×{cols}")]
    Shape { rows: usize, cols: usize },
    #[error("algebra has no codimension-one Abelian ideal")]
    NotAlmostAbelian,
    #[error("two-form is degenerate")]
    Degenerate,
    #[error("block is not in sp(·, C) for the canonical structure")]
    NotInSp,
    #[error("family parameter out of range")]
    ParameterRange,
    #[error("equivalence move is singular or does not preserve (J0, ω0)")]
    InvalidMove,
    #[error("f is not in the canonical block shape")]
    NotCanonicalShape,
    #[error("no complex symplectic structure exists")]
    NoStructure,
    #[error(transparent)]
    Cs(#[from] CsError),
}

/// `R^{4n-1} ⋊_f R`: `f` is `ad_{e_{4n}}` on the ideal `⟨e_1, …, e_{4n-1}⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostAbelianAlg {
    n: usize,
    f: QMat,
}

impl AlmostAbelianAlg {
    pub fn new(f: QMat) -> Result<Self, AaError> {
        let (rows, cols) = (f.rows(), f.cols());
        if rows != cols || rows % 4 != 3 {
            return Err(AaError::Shape { rows, cols });
        }
        Ok(AlmostAbelianAlg { n: (rows + 1) / 4, f })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        4 * self.n
    }

    pub fn f(&self) -> &QMat {
        &self.f
    }

    pub fn lie_algebra(&self) -> LieAlgebra {
        build_semidirect(&self.f).expect("shape checked on construction")
    }
}

/// Lie algebra on `e_1, …, e_{m+1}` with `[e_{m+1}, e_i] = f(e_i)` and the
/// first `m` vectors spanning an Abelian ideal.
pub fn build_semidirect(f: &QMat) -> Result<LieAlgebra, AaError> {
    if !f.is_square() {
        return Err(AaError::Shape { rows: f.rows(), cols: f.cols() });
    }
    let m = f.rows();
    let mut entries = Vec::new();
    for i in 0..m {
        for k in 0..m {
            if !f[(k, i)].is_zero() {
                entries.push(BracketEntry::new(m, i, k, f[(k, i)].clone()));
            }
        }
    }
    Ok(LieAlgebra::new_unchecked(m + 1, &entries).expect("indices are in range"))
}

/// `J_0` on the first `4n-4` coordinates (`J e_{2k-1} = −e_{2k}`).
pub(crate) fn j0_inner(size: usize) -> QMat {
    let mut j = QMat::zeros(size, size);
    for k in 0..size / 2 {
        j[(2 * k + 1, 2 * k)] = -Rat::one();
        j[(2 * k, 2 * k + 1)] = Rat::one();
    }
    j
}

/// `ω_0` on the first `4n-4` coordinates: `Σ e^{4l-3,4l} + e^{4l-2,4l-1}`.
pub(crate) fn omega0_inner(size: usize) -> QMat {
    let mut terms = Vec::new();
    for l in 0..size / 4 {
        terms.push((4 * l, 4 * l + 3, Rat::one()));
        terms.push((4 * l + 1, 4 * l + 2, Rat::one()));
    }
    two_form(size, &terms)
}

/// The canonical pair `(J_0, ω_0)` on `R^{4n}`. The last four basis vectors
/// play the roles of `Y, JY, JX, X`.
pub fn canonical_j0_omega0(n: usize) -> CSStructure {
    assert!(n >= 1, "dimension 4n needs n ≥ 1");
    let dim = 4 * n;
    let inner = dim - 4;
    let mut j = QMat::zeros(dim, dim);
    j.set_block(0, 0, &j0_inner(inner));
    let (y, jy, jx, x) = (inner, inner + 1, inner + 2, inner + 3);
    j[(jy, y)] = Rat::one();
    j[(y, jy)] = -Rat::one();
    j[(x, jx)] = -Rat::one();
    j[(jx, x)] = Rat::one();
    let mut omega = QMat::zeros(dim, dim);
    omega.set_block(0, 0, &omega0_inner(inner));
    let tail = two_form(dim, &[(y, x, -Rat::one()), (jy, jx, Rat::one())]);
    let omega = &omega + &tail;
    CSStructure::new(j, omega).expect("square and antisymmetric")
}

/// Whether `a` (size `4m`) commutes with the standard complex structure and
/// annihilates both real parts of the standard complex symplectic form.
pub fn sp_complex_membership(a: &QMat) -> Result<bool, AaError> {
    if !a.is_square() || !a.rows().is_multiple_of(4) {
        return Err(AaError::Shape { rows: a.rows(), cols: a.cols() });
    }
    let size = a.rows();
    let j = j0_inner(size);
    if a * &j != &j * a {
        return Ok(false);
    }
    let im = omega0_inner(size);
    let re = -&(&j.transpose() * &im);
    let kills = |w: &QMat| (&(&a.transpose() * w) + &(w * a)).is_zero();
    Ok(kills(&im) && kills(&re))
}

/// Realification of a complex matrix given by its real and imaginary parts:
/// each entry `x + iy` becomes `[[x, −y], [y, x]]`.
pub fn realify(re: &QMat, im: &QMat) -> QMat {
    let (r, c) = (re.rows(), re.cols());
    let mut out = QMat::zeros(2 * r, 2 * c);
    for i in 0..r {
        for k in 0..c {
            out[(2 * i, 2 * k)] = re[(i, k)].clone();
            out[(2 * i + 1, 2 * k + 1)] = re[(i, k)].clone();
            out[(2 * i, 2 * k + 1)] = -&im[(i, k)];
            out[(2 * i + 1, 2 * k)] = im[(i, k)].clone();
        }
    }
    out
}

/// Parameters of the block form of `f` adapted to `(J_0, ω_0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThmCSParams {
    pub f_j: QMat,
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub u: QVec,
}

impl ThmCSParams {
    pub fn zero(n: usize) -> Self {
        let s = 4 * n - 4;
        ThmCSParams {
            f_j: QMat::zeros(s, s),
            a: Rat::zero(),
            b: Rat::zero(),
            c: Rat::zero(),
            u: vec_ops::zeros(s),
        }
    }
}

/// Assembles
/// ```text
/// ⎛ f_J        0  0   u ⎞
/// ⎜ ω0(J0u,·)  a  0   b ⎟
/// ⎜ ω0(u,·)    0  a   c ⎟
/// ⎝ 0          0  0  −a ⎠
/// ```
/// without membership checks.
pub(crate) fn assemble_f(p: &ThmCSParams) -> QMat {
    let s = p.f_j.rows();
    let om = omega0_inner(s);
    let jn = j0_inner(s);
    let mut f = QMat::zeros(s + 3, s + 3);
    f.set_block(0, 0, &p.f_j);
    let ju = jn.mul_vec(&p.u);
    // ω(v,·) has components (Ωᵀ v)_k = ω(v, e_k)
    let row_y = om.transpose().mul_vec(&ju);
    let row_jy = om.transpose().mul_vec(&p.u);
    for k in 0..s {
        f[(s, k)] = row_y[k].clone();
        f[(s + 1, k)] = row_jy[k].clone();
        f[(k, s + 2)] = p.u[k].clone();
    }
    f[(s, s)] = p.a.clone();
    f[(s + 1, s + 1)] = p.a.clone();
    f[(s + 2, s + 2)] = -&p.a;
    f[(s, s + 2)] = p.b.clone();
    f[(s + 1, s + 2)] = p.c.clone();
    f
}

/// Inverse of [`assemble_f`]; fails when `f` is not of that shape.
pub(crate) fn read_params(f: &QMat) -> Result<ThmCSParams, AaError> {
    if !f.is_square() || f.rows() % 4 != 3 {
        return Err(AaError::Shape { rows: f.rows(), cols: f.cols() });
    }
    let s = f.rows() - 3;
    let p = ThmCSParams {
        f_j: f.block(0, s, 0, s),
        a: f[(s, s)].clone(),
        b: f[(s, s + 2)].clone(),
        c: f[(s + 1, s + 2)].clone(),
        u: (0..s).map(|k| f[(k, s + 2)].clone()).collect(),
    };
    if assemble_f(&p) != *f {
        return Err(AaError::NotCanonicalShape);
    }
    Ok(p)
}

/// The `f` determined by block-form data; `f_J` must lie in `sp(·, C)`.
pub fn build_f_from_thm_cs(n: usize, p: &ThmCSParams) -> Result<AlmostAbelianAlg, AaError> {
    let s = 4 * n - 4;
    if n == 0 || p.f_j.rows() != s || p.f_j.cols() != s || p.u.len() != s {
        return Err(AaError::Shape { rows: p.f_j.rows(), cols: p.f_j.cols() });
    }
    if s > 0 && !sp_complex_membership(&p.f_j)? {
        return Err(AaError::NotInSp);
    }
    AlmostAbelianAlg::new(assemble_f(p))
}
