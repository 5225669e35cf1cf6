//! Real Lie algebras given by rational structure constants.
//!
//! Indices are zero-based in the API (`e_0 .. e_{n-1}`); text and JSON formats
//! use the one-based names `e1 .. en`.

mod salamon;
mod series;

use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::matrix::QMat;
use crate::rat::{vec_ops, QVec, Rat};
use crate::subspace::Subspace;

pub use salamon::{parse_salamon, print_salamon, SalamonError};
pub use series::{
    codim1_abelian_ideals, invariant_fingerprint, Codim1Ideals, Fingerprint, MultipleKind, ProfileShape,
    SeriesKind, SeriesReport,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("Jacobi identity fails on (e{}, e{}, e{})", .i + 1, .j + 1, .k + 1)]
    JacobiViolation { i: usize, j: usize, k: usize, residual: QVec },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("bracket [e{}, e{}] has its e{} component given twice", .i + 1, .j + 1, .k + 1)]
    DuplicateBracket { i: usize, j: usize, k: usize },
    #[error("bracket of e{} with itself must vanish", .i + 1)]
    SelfBracket { i: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// One structure constant: `c^k_{ij}`, the `e_k` component of `[e_i, e_j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub c: Rat,
}

impl BracketEntry {
    pub fn new(i: usize, j: usize, k: usize, c: Rat) -> Self {
        BracketEntry { i, j, k, c }
    }
}

/// Lie algebra with structure constants stored for `i < j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LieAlgebra {
    dim: usize,
    /// `consts[pair_index(i, j)]` is the vector `[e_i, e_j]` for `i < j`.
    consts: Vec<QVec>,
}

fn pair_index(dim: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < dim);
    i * dim - i * (i + 1) / 2 + (j - i - 1)
}

impl LieAlgebra {
    /// Abelian algebra of the given dimension.
    pub fn abelian(dim: usize) -> Self {
        let pairs = dim * dim.saturating_sub(1) / 2;
        LieAlgebra { dim, consts: vec![vec_ops::zeros(dim); pairs] }
    }

    /// Builds from bracket entries (antisymmetric closure implied) and checks Jacobi.
    pub fn new(dim: usize, entries: &[BracketEntry]) -> Result<Self, LieError> {
        let alg = Self::new_unchecked(dim, entries)?;
        alg.check_jacobi()?;
        Ok(alg)
    }

    /// As [`LieAlgebra::new`] with the Jacobi check deferred.
    pub fn new_unchecked(dim: usize, entries: &[BracketEntry]) -> Result<Self, LieError> {
        let mut alg = Self::abelian(dim);
        let mut seen = alloc::collections::BTreeSet::new();
        for e in entries {
            for &idx in &[e.i, e.j, e.k] {
                if idx >= dim {
                    return Err(LieError::IndexOutOfRange { index: idx, dim });
                }
            }
            if e.i == e.j {
                if e.c.is_zero() {
                    continue;
                }
                return Err(LieError::SelfBracket { i: e.i });
            }
            let (a, b, c) = if e.i < e.j { (e.i, e.j, e.c.clone()) } else { (e.j, e.i, -&e.c) };
            if !seen.insert((a, b, e.k)) {
                return Err(LieError::DuplicateBracket { i: a, j: b, k: e.k });
            }
            let p = pair_index(dim, a, b);
            alg.consts[p][e.k] = c;
        }
        Ok(alg)
    }

    /// Builds from a full bracket function on basis pairs `i < j`.
    pub fn from_fn(dim: usize, mut bracket: impl FnMut(usize, usize) -> QVec) -> Self {
        let mut alg = Self::abelian(dim);
        for i in 0..dim {
            for j in i + 1..dim {
                let v = bracket(i, j);
                assert_eq!(v.len(), dim, "bracket vector length");
                alg.consts[pair_index(dim, i, j)] = v;
            }
        }
        alg
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// All nonzero structure constants with `i < j`.
    pub fn entries(&self) -> Vec<BracketEntry> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for (k, c) in self.consts[pair_index(self.dim, i, j)].iter().enumerate() {
                    if !c.is_zero() {
                        out.push(BracketEntry::new(i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    /// `c^k_{ij}`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rat {
        self.bracket_basis(i, j)[k].clone()
    }

    /// `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> QVec {
        use core::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => vec_ops::zeros(self.dim),
            Less => self.consts[pair_index(self.dim, i, j)].clone(),
            Greater => vec_ops::neg(&self.consts[pair_index(self.dim, j, i)]),
        }
    }

    fn bracket_basis_ref(&self, i: usize, j: usize) -> Option<(&QVec, bool)> {
        use core::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => None,
            Less => Some((&self.consts[pair_index(self.dim, i, j)], false)),
            Greater => Some((&self.consts[pair_index(self.dim, j, i)], true)),
        }
    }

    /// `[x, y]` for arbitrary vectors.
    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> QVec {
        let mut out = vec_ops::zeros(self.dim);
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() || i == j {
                    continue;
                }
                let (v, negate) = self.bracket_basis_ref(i, j).unwrap();
                let s = if negate { -(&x[i] * &y[j]) } else { &x[i] * &y[j] };
                vec_ops::axpy(&mut out, &s, v);
            }
        }
        out
    }

    /// Matrix of `ad_x = [x, ·]`.
    pub fn ad(&self, x: &[Rat]) -> QMat {
        let cols: Vec<QVec> = (0..self.dim)
            .map(|j| self.bracket(x, &vec_ops::unit(self.dim, j)))
            .collect();
        QMat::from_columns(self.dim, &cols)
    }

    pub fn ad_basis(&self, i: usize) -> QMat {
        let cols: Vec<QVec> = (0..self.dim).map(|j| self.bracket_basis(i, j)).collect();
        QMat::from_columns(self.dim, &cols)
    }

    pub fn is_abelian(&self) -> bool {
        self.consts.iter().all(|v| vec_ops::is_zero(v))
    }

    /// First Jacobi violation on a basis triple `i < j < k`, if any.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize, QVec)> {
        let n = self.dim;
        let ads: Vec<QMat> = (0..n).map(|i| self.ad_basis(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let eij = self.bracket_basis(i, j);
                for k in j + 1..n {
                    // [[ei,ej],ek] + [[ej,ek],ei] + [[ek,ei],ej]
                    let mut r = vec_ops::neg(&ads[k].mul_vec(&eij));
                    let ejk = self.bracket_basis(j, k);
                    r = vec_ops::sub(&r, &ads[i].mul_vec(&ejk));
                    let eki = self.bracket_basis(k, i);
                    r = vec_ops::sub(&r, &ads[j].mul_vec(&eki));
                    if !vec_ops::is_zero(&r) {
                        return Some((i, j, k, r));
                    }
                }
            }
        }
        None
    }

    pub fn check_jacobi(&self) -> Result<(), LieError> {
        match self.jacobi_violation() {
            Some((i, j, k, residual)) => Err(LieError::JacobiViolation { i, j, k, residual }),
            None => Ok(()),
        }
    }

    /// Structure constants in the basis given by the columns of `p`.
    pub fn change_basis(&self, p: &QMat) -> Self {
        let inv = p.inverse().expect("change of basis must be invertible");
        let cols = p.columns();
        Self::from_fn(self.dim, |i, j| inv.mul_vec(&self.bracket(&cols[i], &cols[j])))
    }

    /// Direct sum, with `other`'s basis appended after `self`'s.
    pub fn direct_sum(&self, other: &LieAlgebra) -> Self {
        let n = self.dim + other.dim;
        Self::from_fn(n, |i, j| {
            let mut v = vec_ops::zeros(n);
            if j < self.dim {
                v[..self.dim].clone_from_slice(&self.bracket_basis(i, j));
            } else if i >= self.dim {
                v[self.dim..].clone_from_slice(&other.bracket_basis(i - self.dim, j - self.dim));
            }
            v
        })
    }

    /// Span of `[a, b]` over basis vectors of `a_space` and `b_space`.
    pub fn bracket_space(&self, a_space: &Subspace, b_space: &Subspace) -> Subspace {
        let av = a_space.vectors();
        let bv = b_space.vectors();
        let mut out = Vec::new();
        for x in &av {
            for y in &bv {
                let v = self.bracket(x, y);
                if !vec_ops::is_zero(&v) {
                    out.push(v);
                }
            }
        }
        Subspace::span(self.dim, &out)
    }

    /// `[g, g]`.
    pub fn commutator_ideal(&self) -> Subspace {
        let vs: Vec<QVec> = self.consts.iter().filter(|v| !vec_ops::is_zero(v)).cloned().collect();
        Subspace::span(self.dim, &vs)
    }

    /// `{x : [x, s] = 0 for all s ∈ S}`.
    pub fn centralizer(&self, s: &Subspace) -> Subspace {
        if s.is_zero() {
            return Subspace::full(self.dim);
        }
        let mut rows = Vec::new();
        for v in s.vectors() {
            // x ↦ [x, v] = −ad_v x
            rows.extend(self.ad(&v).to_rows());
        }
        Subspace::kernel_of(&QMat::from_rows(rows))
    }

    pub fn center(&self) -> Subspace {
        self.centralizer(&Subspace::full(self.dim))
    }

    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.vectors().iter().all(|v| s.is_invariant(&self.ad(v)))
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        s.contains_subspace(&self.bracket_space(s, s))
    }

    pub fn is_abelian_subspace(&self, s: &Subspace) -> bool {
        self.bracket_space(s, s).is_zero()
    }

    /// `tr ad_x = 0` for all `x`.
    pub fn is_unimodular(&self) -> bool {
        (0..self.dim).all(|i| self.ad_basis(i).trace().is_zero())
    }

    /// Whether `d` is a derivation: `d[x,y] = [dx,y] + [x,dy]` on basis pairs.
    pub fn is_derivation(&self, d: &QMat) -> bool {
        let cols = d.columns();
        (0..self.dim).all(|i| {
            (i + 1..self.dim).all(|j| {
                let lhs = d.mul_vec(&self.bracket_basis(i, j));
                let rhs = vec_ops::add(
                    &self.bracket(&cols[i], &vec_ops::unit(self.dim, j)),
                    &self.bracket(&vec_ops::unit(self.dim, i), &cols[j]),
                );
                lhs == rhs
            })
        })
    }

    /// Quotient `g / ideal` in the basis of standard vectors complementary to the
    /// ideal; returns the algebra with the projection `g → g/ideal` and the
    /// section whose columns lift the quotient basis.
    pub fn quotient(&self, ideal: &Subspace) -> (LieAlgebra, QMat, QMat) {
        let comp = ideal.coordinate_complement();
        let lifts = comp.vectors();
        let q = lifts.len();
        // coordinates w.r.t. [lifts | ideal basis]
        let mut all = lifts.clone();
        all.extend(ideal.vectors());
        let change = QMat::from_columns(self.dim, &all);
        let inv = change.inverse().expect("complement spans with the ideal");
        let projection = inv.block(0, q, 0, self.dim);
        let section = QMat::from_columns(self.dim, &lifts);
        let alg = Self::from_fn(q, |i, j| projection.mul_vec(&self.bracket(&lifts[i], &lifts[j])));
        (alg, projection, section)
    }
}
