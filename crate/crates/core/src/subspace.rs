//! Linear subspaces of Q^n in a canonical echelon basis.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::matrix::QMat;
use crate::rat::{vec_ops, QVec, Rat};

/// A subspace of Q^n. The basis columns are the transposed rows of a reduced
/// row echelon matrix, so two subspaces are equal iff their bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: QMat,
}

impl Subspace {
    /// Span of arbitrary vectors of length `ambient_dim`.
    pub fn span(ambient_dim: usize, vectors: &[QVec]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient_dim);
        }
        let (r, pivots) = QMat::from_rows(vectors.to_vec()).rref();
        let rows: Vec<QVec> = (0..pivots.len()).map(|i| r.row(i)).collect();
        Subspace { ambient_dim, basis: QMat::from_columns(ambient_dim, &rows) }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: QMat::zeros(ambient_dim, 0) }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace { ambient_dim, basis: QMat::identity(ambient_dim) }
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Self {
        let vs: Vec<QVec> = indices.iter().map(|&i| vec_ops::unit(ambient_dim, i)).collect();
        Self::span(ambient_dim, &vs)
    }

    /// Column space of `m`.
    pub fn column_space(m: &QMat) -> Self {
        Self::span(m.rows(), &m.columns())
    }

    /// Kernel of `m`.
    pub fn kernel_of(m: &QMat) -> Self {
        Self::span(m.cols(), &m.kernel())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// Basis as columns of an `ambient_dim × dim` matrix.
    pub fn basis(&self) -> &QMat {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<QVec> {
        self.basis.columns()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rat]) -> Option<QVec> {
        if vec_ops::is_zero(v) {
            return Some(vec_ops::zeros(self.dim()));
        }
        if self.is_zero() {
            return None;
        }
        self.basis.solve(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.vectors();
        vs.extend(other.vectors());
        Subspace::span(self.ambient_dim, &vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient_dim);
        }
        // solve U a = W b
        let (k, l) = (self.dim(), other.dim());
        let mut m = QMat::zeros(self.ambient_dim, k + l);
        m.set_block(0, 0, &self.basis);
        m.set_block(0, k, &(-&other.basis));
        let vs: Vec<QVec> = m
            .kernel()
            .iter()
            .map(|sol| self.basis.mul_vec(&sol[..k]))
            .collect();
        Subspace::span(self.ambient_dim, &vs)
    }

    /// Image under a linear map `m` (`m.cols() == ambient_dim`).
    pub fn image(&self, m: &QMat) -> Subspace {
        let vs: Vec<QVec> = self.vectors().iter().map(|v| m.mul_vec(v)).collect();
        Subspace::span(m.rows(), &vs)
    }

    /// Annihilator, returned as the subspace of covector coordinate vectors.
    pub fn annihilator(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.ambient_dim);
        }
        Subspace::span(self.ambient_dim, &self.basis.transpose().kernel())
    }

    /// Preimage `{x : m x ∈ self}` under `m`.
    pub fn preimage(&self, m: &QMat) -> Subspace {
        let ann = self.annihilator();
        if ann.is_zero() {
            return Subspace::full(m.cols());
        }
        let a = QMat::from_rows(ann.vectors());
        Subspace::kernel_of(&(&a * m))
    }

    /// Whether `m` maps the subspace into itself.
    pub fn is_invariant(&self, m: &QMat) -> bool {
        self.vectors().iter().all(|v| self.contains(&m.mul_vec(v)))
    }

    /// A complement spanned by standard basis vectors.
    pub fn coordinate_complement(&self) -> Subspace {
        let mut chosen = self.vectors();
        let mut extra = Vec::new();
        for i in 0..self.ambient_dim {
            let e = vec_ops::unit(self.ambient_dim, i);
            let mut trial = chosen.clone();
            trial.push(e.clone());
            if QMat::from_rows(trial.clone()).rank() == trial.len() {
                chosen = trial;
                extra.push(e);
            }
        }
        Subspace::span(self.ambient_dim, &extra)
    }

    /// Whether every basis vector has zero pairing under the bilinear form `b`.
    pub fn is_isotropic(&self, b: &QMat) -> bool {
        let vs = self.vectors();
        vs.iter().all(|x| {
            let bx = b.transpose().mul_vec(x);
            vs.iter().all(|y| vec_ops::dot(&bx, y).is_zero())
        })
    }
}
