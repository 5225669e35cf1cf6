//! Complex symplectic structures on cotangent extensions `g = h* ⊕ h`.
//!
//! The data is a Lie algebra `h` with complex structure `J`, a linear map
//! `ρ: h → End(h*)` and a cochain `α ∈ C²(h, h*)`. Covectors are coordinate
//! columns in the dual basis `e^1 .. e^{2n}`; `ρ(e_i)` acts on them by matrix
//! multiplication and `J*` is `Jᵀ`.

mod examples;
mod lagrangian;
pub mod sample;
#[cfg(test)]
mod tests;

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::csgeom::{is_abelian_j, is_almost_complex, is_integrable, is_parallelizable_j, CSStructure, CsError};
use crate::lie::LieAlgebra;
use crate::matrix::QMat;
use crate::rat::{vec_ops, QVec, Rat};

pub use examples::{
    fullrank_dim4, fullrank_dim8, fullrank_report, h7_algebra, h7_complex_structure, h7_solution_family,
    no_02_part_witness, rational_circle_point, rho_from_hat, rho_hat, rho_zero_builder, rho_zero_forms,
    FullRankReport, H7Params,
};
pub use lagrangian::{find_j_lagrangian_ideal, lagrangian_complement, reconstruct_cotangent_data, Reconstruction};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CotError {
    #[error("shape mismatch: {0}")]
    Shape(&'static str),
    #[error("J does not square to −I on h")]
    NotAlmostComplex,
    #[error("J is not integrable on h")]
    NotIntegrable,
    #[error("precondition failed: {0}")]
    Precondition(&'static str),
    #[error("parameter constraint violated: {0}")]
    Constraint(&'static str),
    #[error("condition {condition} fails at {witness:?}")]
    Condition { condition: u8, witness: Vec<usize> },
    #[error(transparent)]
    Cs(#[from] CsError),
}

/// `α(e_i, e_j) ∈ h*`, stored for all ordered pairs and kept antisymmetric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alpha {
    dim: usize,
    values: Vec<QVec>,
}

impl Alpha {
    pub fn zero(dim: usize) -> Self {
        Alpha { dim, values: vec![vec_ops::zeros(dim); dim * dim] }
    }

    /// `α = Σ_k α_k ⊗ e^k` from antisymmetric matrices `α_k`.
    pub fn from_two_forms(forms: &[QMat]) -> Result<Self, CotError> {
        let dim = forms.len();
        for f in forms {
            if f.rows() != dim || f.cols() != dim {
                return Err(CotError::Shape("each α_k must be 2n×2n with 2n components"));
            }
            if f.transpose() != -f {
                return Err(CotError::Shape("α_k must be antisymmetric"));
            }
        }
        let mut out = Alpha::zero(dim);
        for i in 0..dim {
            for j in 0..dim {
                out.values[i * dim + j] = forms.iter().map(|f| f[(i, j)].clone()).collect();
            }
        }
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &QVec {
        &self.values[i * self.dim + j]
    }

    /// Sets `α(e_i, e_j) = v` and `α(e_j, e_i) = −v`.
    pub fn set(&mut self, i: usize, j: usize, v: QVec) {
        assert!(i != j || vec_ops::is_zero(&v), "α(e_i, e_i) must vanish");
        assert_eq!(v.len(), self.dim);
        self.values[j * self.dim + i] = vec_ops::neg(&v);
        self.values[i * self.dim + j] = v;
    }

    /// The 2-form `α_k = e^k ∘ α`.
    pub fn component(&self, k: usize) -> QMat {
        let mut m = QMat::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(i, j)] = self.get(i, j)[k].clone();
            }
        }
        m
    }

    pub fn eval(&self, x: &[Rat], y: &[Rat]) -> QVec {
        let mut out = vec_ops::zeros(self.dim);
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                vec_ops::axpy(&mut out, &(xi * yj), self.get(i, j));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| vec_ops::is_zero(v))
    }
}

/// Input of the cotangent extension: `(h, J, ρ, α)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CotangentData {
    h: LieAlgebra,
    jh: QMat,
    rho: Vec<QMat>,
    alpha: Alpha,
}

impl CotangentData {
    /// Checks shapes, `J² = −I` and integrability of `J` on `h`.
    pub fn new(h: LieAlgebra, jh: QMat, rho: Vec<QMat>, alpha: Alpha) -> Result<Self, CotError> {
        let m = h.dim();
        if !m.is_multiple_of(2) {
            return Err(CotError::Shape("dim h must be even"));
        }
        if jh.rows() != m || jh.cols() != m {
            return Err(CotError::Shape("J must be square of size dim h"));
        }
        if rho.len() != m || rho.iter().any(|r| r.rows() != m || r.cols() != m) {
            return Err(CotError::Shape("ρ must be dim h matrices of size dim h"));
        }
        if alpha.dim() != m {
            return Err(CotError::Shape("α must have dimension dim h"));
        }
        if !is_almost_complex(&jh) {
            return Err(CotError::NotAlmostComplex);
        }
        if !is_integrable(&h, &jh)? {
            return Err(CotError::NotIntegrable);
        }
        Ok(CotangentData { h, jh, rho, alpha })
    }

    pub fn h(&self) -> &LieAlgebra {
        &self.h
    }

    pub fn jh(&self) -> &QMat {
        &self.jh
    }

    pub fn rho(&self) -> &[QMat] {
        &self.rho
    }

    pub fn alpha(&self) -> &Alpha {
        &self.alpha
    }

    /// Replaces `ρ`, keeping the shape checks.
    pub fn with_rho(self, rho: Vec<QMat>) -> Result<Self, CotError> {
        CotangentData::new(self.h, self.jh, rho, self.alpha)
    }

    /// Replaces `α`, keeping the shape checks.
    pub fn with_alpha(self, alpha: Alpha) -> Result<Self, CotError> {
        CotangentData::new(self.h, self.jh, self.rho, alpha)
    }

    /// `dim h`.
    pub fn half_dim(&self) -> usize {
        self.h.dim()
    }

    /// `J* = Jᵀ` on covector coordinates.
    pub fn j_star(&self) -> QMat {
        self.jh.transpose()
    }

    /// `ρ(x) = Σ x_i ρ(e_i)`.
    pub fn rho_of(&self, x: &[Rat]) -> QMat {
        let m = self.half_dim();
        let mut acc = QMat::zeros(m, m);
        for (xi, r) in x.iter().zip(&self.rho).filter(|(v, _)| !v.is_zero()) {
            acc = &acc + &r.scale(xi);
        }
        acc
    }
}

/// `𝐉 = J* ⊕ J` and `𝛀((φ,X),(ψ,Y)) = φ(Y) − ψ(X)` in the basis `(φ^k, e_i)`.
pub fn cotangent_structure(m: usize, jh: &QMat) -> CSStructure {
    let j = QMat::block_diag(&[jh.transpose(), jh.clone()]);
    let mut omega = QMat::zeros(2 * m, 2 * m);
    for k in 0..m {
        omega[(k, m + k)] = Rat::one();
        omega[(m + k, k)] = -Rat::one();
    }
    CSStructure::new(j, omega).expect("square antisymmetric")
}

/// The algebra `h* ⊕ h` with basis `(e^1 .. e^{2n}, e_1 .. e_{2n})` and its
/// structure. The bracket is assembled even when Jacobi fails.
pub fn build_cotangent(d: &CotangentData) -> (LieAlgebra, CSStructure) {
    let m = d.half_dim();
    let alg = LieAlgebra::from_fn(2 * m, |a, b| {
        let mut v = vec_ops::zeros(2 * m);
        match (a >= m, b >= m) {
            (false, false) => {}
            (true, false) => v[..m].clone_from_slice(&d.rho[a - m].column(b)),
            (false, true) => v[..m].clone_from_slice(&vec_ops::neg(&d.rho[b - m].column(a))),
            (true, true) => {
                let (i, j) = (a - m, b - m);
                v[..m].clone_from_slice(d.alpha.get(i, j));
                v[m..].clone_from_slice(&d.h.bracket_basis(i, j));
            }
        }
        v
    });
    (alg, cotangent_structure(m, &d.jh))
}

/// Result of one condition; the witness lists the offending basis indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub holds: bool,
    pub witness: Option<Vec<usize>>,
}

impl Check {
    fn from_witness(witness: Option<Vec<usize>>) -> Self {
        Check { holds: witness.is_none(), witness }
    }
}

/// The six conditions, each evaluated on every basis combination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    /// `d_ρ α = 0`; witness `(i, j, k)`.
    pub c1_cocycle: Check,
    /// `ρ([X,Y]) = [ρ(X), ρ(Y)]`; witness `(i, j)`.
    pub c2_morphism: Check,
    /// Cyclic sum of `α(X,Y)(Z)` vanishes; witness `(i, j, k)`.
    pub c3_bianchi: Check,
    /// `α(X,Y) − α(JX,JY) = −J*(α(JX,Y) + α(X,JY))`; witness `(i, j)`.
    pub c4_alpha_type: Check,
    /// `ρ(X)(φ)(Y) − ρ(Y)(φ)(X) + φ([X,Y]) = 0`; witness `(i, j, k)` with `φ = e^k`.
    pub c5_rho_omega: Check,
    /// `ρ(X)φ − ρ(JX)(J*φ) = −J*(ρ(X)(J*φ) + ρ(JX)φ)`; witness `(i, k)`.
    pub c6_rho_type: Check,
}

impl ConditionReport {
    pub fn checks(&self) -> [&Check; 6] {
        [
            &self.c1_cocycle,
            &self.c2_morphism,
            &self.c3_bianchi,
            &self.c4_alpha_type,
            &self.c5_rho_omega,
            &self.c6_rho_type,
        ]
    }

    pub fn all_hold(&self) -> bool {
        self.checks().iter().all(|c| c.holds)
    }

    /// The first failing condition (1-based) with its witness.
    pub fn first_failure(&self) -> Option<(u8, Vec<usize>)> {
        self.checks()
            .iter()
            .zip(1u8..)
            .find_map(|(c, k)| c.witness.clone().map(|w| (k, w)))
    }
}

fn find_pair(m: usize, mut bad: impl FnMut(usize, usize) -> bool) -> Option<Vec<usize>> {
    (0..m).flat_map(|i| (0..m).map(move |j| (i, j))).find(|&(i, j)| bad(i, j)).map(|(i, j)| vec![i, j])
}

fn find_triple(m: usize, mut bad: impl FnMut(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    (0..m)
        .flat_map(|i| (0..m).flat_map(move |j| (0..m).map(move |k| (i, j, k))))
        .find(|&(i, j, k)| bad(i, j, k))
        .map(|(i, j, k)| vec![i, j, k])
}

pub fn check_conditions(d: &CotangentData) -> ConditionReport {
    let m = d.half_dim();
    let e = |i: usize| vec_ops::unit(m, i);
    let jcols = d.jh.columns();
    let js = d.j_star();
    let br = |i: usize, j: usize| d.h.bracket_basis(i, j);

    let c1 = find_triple(m, |i, j, k| {
        let a = &d.alpha;
        let mut v = d.rho[i].mul_vec(a.get(j, k));
        v = vec_ops::sub(&v, &d.rho[j].mul_vec(a.get(i, k)));
        v = vec_ops::add(&v, &d.rho[k].mul_vec(a.get(i, j)));
        v = vec_ops::sub(&v, &a.eval(&br(i, j), &e(k)));
        v = vec_ops::add(&v, &a.eval(&br(i, k), &e(j)));
        v = vec_ops::sub(&v, &a.eval(&br(j, k), &e(i)));
        !vec_ops::is_zero(&v)
    });

    let c2 = find_pair(m, |i, j| d.rho_of(&br(i, j)) != d.rho[i].commutator(&d.rho[j]));

    let c3 = find_triple(m, |i, j, k| {
        let a = &d.alpha;
        let s = &a.get(i, j)[k] + &a.get(j, k)[i] + &a.get(k, i)[j];
        !s.is_zero()
    });

    let c4 = find_pair(m, |i, j| {
        let a = &d.alpha;
        let lhs = vec_ops::sub(a.get(i, j), &a.eval(&jcols[i], &jcols[j]));
        let inner = vec_ops::add(&a.eval(&jcols[i], &e(j)), &a.eval(&e(i), &jcols[j]));
        let rhs = vec_ops::neg(&js.mul_vec(&inner));
        lhs != rhs
    });

    let c5 = find_triple(m, |i, j, k| {
        let s = &d.rho[i][(j, k)] - &d.rho[j][(i, k)] + &br(i, j)[k];
        !s.is_zero()
    });

    let c6 = find_pair(m, |i, k| {
        let phi = e(k);
        let jphi = js.mul_vec(&phi);
        let rho_jx = d.rho_of(&jcols[i]);
        let lhs = vec_ops::sub(&d.rho[i].mul_vec(&phi), &rho_jx.mul_vec(&jphi));
        let inner = vec_ops::add(&d.rho[i].mul_vec(&jphi), &rho_jx.mul_vec(&phi));
        lhs != vec_ops::neg(&js.mul_vec(&inner))
    });

    ConditionReport {
        c1_cocycle: Check::from_witness(c1),
        c2_morphism: Check::from_witness(c2),
        c3_bianchi: Check::from_witness(c3),
        c4_alpha_type: Check::from_witness(c4),
        c5_rho_omega: Check::from_witness(c5),
        c6_rho_type: Check::from_witness(c6),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianCriteria {
    pub j_abelian: bool,
    /// `α(JX,JY) = α(X,Y)`.
    pub alpha_11: bool,
    /// `ρ(JX) = −ρ(X)∘J*`.
    pub rho_anti_holomorphic: bool,
    pub verdict: bool,
    /// `𝐉` Abelian on the built algebra.
    pub built: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParallelizableCriteria {
    pub j_parallelizable: bool,
    /// `J*(α(X,Y)) = α(JX,Y)`.
    pub alpha_complex: bool,
    /// `ρ(X)∘J* = J*∘ρ(X)`.
    pub rho_commutes: bool,
    /// `J*∘ρ(X) = ρ(JX)`.
    pub rho_j_linear: bool,
    pub verdict: bool,
    /// `𝐉` parallelizable on the built algebra.
    pub built: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriteriaReport {
    pub abelian: AbelianCriteria,
    pub parallelizable: ParallelizableCriteria,
}

pub fn abelian_parallelizable_criteria(d: &CotangentData) -> CriteriaReport {
    let m = d.half_dim();
    let e = |i: usize| vec_ops::unit(m, i);
    let jcols = d.jh.columns();
    let js = d.j_star();
    let a = &d.alpha;
    let pairs = || (0..m).flat_map(|i| (0..m).map(move |j| (i, j)));

    let j_abelian = is_abelian_j(&d.h, &d.jh).unwrap_or(false);
    let alpha_11 = pairs().all(|(i, j)| a.eval(&jcols[i], &jcols[j]) == *a.get(i, j));
    let rho_anti_holomorphic = (0..m).all(|i| d.rho_of(&jcols[i]) == -&(&d.rho[i] * &js));

    let j_parallelizable = is_parallelizable_j(&d.h, &d.jh).unwrap_or(false);
    let alpha_complex = pairs().all(|(i, j)| js.mul_vec(a.get(i, j)) == a.eval(&jcols[i], &e(j)));
    let rho_commutes = d.rho.iter().all(|r| r * &js == &js * r);
    let rho_j_linear = (0..m).all(|i| &js * &d.rho[i] == d.rho_of(&jcols[i]));

    let (alg, s) = build_cotangent(d);
    CriteriaReport {
        abelian: AbelianCriteria {
            j_abelian,
            alpha_11,
            rho_anti_holomorphic,
            verdict: j_abelian && alpha_11 && rho_anti_holomorphic,
            built: is_abelian_j(&alg, s.j()).unwrap_or(false),
        },
        parallelizable: ParallelizableCriteria {
            j_parallelizable,
            alpha_complex,
            rho_commutes,
            rho_j_linear,
            verdict: j_parallelizable && alpha_complex && rho_commutes && rho_j_linear,
            built: is_parallelizable_j(&alg, s.j()).unwrap_or(false),
        },
    }
}
