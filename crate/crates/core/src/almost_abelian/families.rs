//! The five normal forms of `f` for complex symplectic almost Abelian
//! algebras, with their Jordan-type building blocks.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::{assemble_f, sp_complex_membership, AaError, AlmostAbelianAlg, ThmCSParams};
use crate::matrix::QMat;
use crate::rat::{vec_ops, Rat};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// `diag(A, 1, 1, −1)`.
    NonUnimodularPlain,
    /// `diag(A, 0)` with `b, c` in the last column.
    UnimodularPlain { b: Rat, c: Rat },
    /// `B ⊕ J̃_p(−1)` coupled to `(1, 1, −1)`.
    NonUnimodularJordan { p: usize },
    /// `C ⊕ J̃_{2r−1}` coupled to a nilpotent tail.
    UnimodularOdd { r: usize, b: Rat, c: Rat },
    /// `D ⊕ J̃_{2s}` coupled to a nilpotent tail.
    UnimodularEven { s: usize, b: Rat, c: Rat },
}

/// A family together with its free `sp(·, C)` block, stored as a real
/// matrix of doubled size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalFParams {
    pub family: Family,
    pub inner: QMat,
}

fn i20() -> QMat {
    QMat::diagonal(&[Rat::one(), Rat::one(), Rat::zero(), Rat::zero()])
}

fn i02() -> QMat {
    QMat::diagonal(&[Rat::zero(), Rat::zero(), Rat::one(), Rat::one()])
}

/// Block tridiagonal matrix with the given 4×4 diagonal blocks, `−I_{0,2}`
/// above and `I_{2,0}` below the diagonal.
fn chain(diagonal: &[QMat]) -> QMat {
    let m = diagonal.len();
    let mut out = QMat::zeros(4 * m, 4 * m);
    let (up, down) = (-&i02(), i20());
    for (i, d) in diagonal.iter().enumerate() {
        out.set_block(4 * i, 4 * i, d);
        if i + 1 < m {
            out.set_block(4 * i, 4 * (i + 1), &up);
            out.set_block(4 * (i + 1), 4 * i, &down);
        }
    }
    out
}

/// `J̃_m(−1)`, of size `4m`, with diagonal blocks `diag(−1, −1, 1, 1)`.
pub fn jt_minus_one(m: usize) -> QMat {
    let d = QMat::diagonal(&[-Rat::one(), -Rat::one(), Rat::one(), Rat::one()]);
    chain(&alloc::vec![d; m])
}

/// `J̃_{2k−1}`, of size `8k − 4`.
pub fn jt_chain_odd(k: usize) -> QMat {
    chain(&alloc::vec![QMat::zeros(4, 4); 2 * k - 1])
}

/// `J̃_{2k}`, of size `4k`, ending in `Ñ = [[0, 0], [I₂, 0]]`.
pub fn jt_chain_even(k: usize) -> QMat {
    let mut blocks = alloc::vec![QMat::zeros(4, 4); k];
    let last = blocks.last_mut().expect("k ≥ 1");
    last[(2, 0)] = Rat::one();
    last[(3, 1)] = Rat::one();
    chain(&blocks)
}

/// Size of the free `sp` block for `family` in dimension `4n`.
pub fn inner_size(n: usize, family: &Family) -> Result<usize, AaError> {
    let in_range = |v: usize, hi: usize| (1..=hi).contains(&v);
    let s = match *family {
        Family::NonUnimodularPlain | Family::UnimodularPlain { .. } => 4 * n - 4,
        Family::NonUnimodularJordan { p } if in_range(p, n.saturating_sub(1)) => 4 * (n - 1 - p),
        Family::UnimodularOdd { r, .. } if in_range(r, n / 2) => 4 * n - 8 * r,
        Family::UnimodularEven { s, .. } if in_range(s, n.saturating_sub(1)) => 4 * (n - 1 - s),
        _ => return Err(AaError::ParameterRange),
    };
    Ok(s)
}

pub fn canonical_family_build(n: usize, p: &CanonicalFParams) -> Result<AlmostAbelianAlg, AaError> {
    if n == 0 {
        return Err(AaError::ParameterRange);
    }
    let size = inner_size(n, &p.family)?;
    if p.inner.rows() != size || p.inner.cols() != size {
        return Err(AaError::Shape { rows: p.inner.rows(), cols: p.inner.cols() });
    }
    if size > 0 && !sp_complex_membership(&p.inner)? {
        return Err(AaError::NotInSp);
    }
    let zero = Rat::zero;
    let (tail, a, b, c) = match &p.family {
        Family::NonUnimodularPlain => (None, Rat::one(), zero(), zero()),
        Family::UnimodularPlain { b, c } => (None, zero(), b.clone(), c.clone()),
        Family::NonUnimodularJordan { p } => (Some(jt_minus_one(*p)), Rat::one(), zero(), zero()),
        Family::UnimodularOdd { r, b, c } => (Some(jt_chain_odd(*r)), zero(), b.clone(), c.clone()),
        Family::UnimodularEven { s, b, c } => (Some(jt_chain_even(*s)), zero(), b.clone(), c.clone()),
    };
    let mut blocks: Vec<QMat> = Vec::new();
    if size > 0 {
        blocks.push(p.inner.clone());
    }
    let total = 4 * n - 4;
    let mut u = vec_ops::zeros(total);
    if let Some(t) = tail {
        blocks.push(t);
        u[size] = Rat::one();
    }
    let f_j = if blocks.is_empty() { QMat::zeros(0, 0) } else { QMat::block_diag(&blocks) };
    AlmostAbelianAlg::new(assemble_f(&ThmCSParams { f_j, a, b, c, u }))
}
