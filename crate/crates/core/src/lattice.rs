//! Integer data for the lattices in the unimodular almost abelian family with
//! diagonal `A = diag(±(2j−1)/2m)`: the sequence `a_k = ρ^{2k} + ρ^{−2k}`,
//! the polynomial `q` and the integer matrix `diag(1, B_q, B_q)`.
//!
//! `ρ` and `t_ℓ` are never represented exactly; every exact statement goes
//! through the integer recurrence `a_{k+1} = ℓ a_k − a_{k−1}`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Float, One, Zero};

use crate::almost_abelian::{classify_existence, Existence};
use crate::matrix::QMat;
use crate::poly::QPoly;
use crate::profile::charpoly;
use crate::rat::{frac, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    #[error("ℓ must be at least 3, got {0}")]
    EllTooSmall(i64),
    #[error("n must be at least 2, got {0}")]
    NTooSmall(usize),
}

fn check_ell(ell: i64) -> Result<(), LatticeError> {
    if ell < 3 {
        return Err(LatticeError::EllTooSmall(ell));
    }
    Ok(())
}

/// `a_0 .. a_kmax` with `a_0 = 2`, `a_1 = ℓ`, `a_{k+1} = ℓ a_k − a_{k−1}`.
pub fn a_sequence(ell: i64, kmax: usize) -> Result<Vec<BigInt>, LatticeError> {
    check_ell(ell)?;
    let ell = BigInt::from(ell);
    let mut a = Vec::with_capacity(kmax + 1);
    a.push(BigInt::from(2));
    if kmax >= 1 {
        a.push(ell.clone());
    }
    while a.len() <= kmax {
        let k = a.len();
        let next = &ell * &a[k - 1] - &a[k - 2];
        a.push(next);
    }
    Ok(a)
}

fn rat_poly(p: &QPoly) -> Vec<BigInt> {
    p.coeffs().iter().map(|c| c.to_integer()).collect()
}

fn quadratic(a: &BigInt) -> QPoly {
    QPoly::new(alloc::vec![Rat::one(), -Rat::from_integer(a.clone()), Rat::one()])
}

/// `q = (x − 1) ∏_{j=1}^{m} (x² − a_{2j−1} x + 1)`, constant term first.
pub fn build_q(ell: i64, m: usize) -> Result<QPoly, LatticeError> {
    let a = a_sequence(ell, 2 * m)?;
    let mut q = QPoly::linear(&Rat::one());
    for j in 1..=m {
        q = &q * &quadratic(&a[2 * j - 1]);
    }
    Ok(q)
}

/// The companion matrix of a monic `q` (ones below the diagonal, last column
/// `−(c_0, …, c_{d−1})`) and `diag(1, B_q, B_q)`.
pub fn companion_blocks(q: &QPoly) -> (QMat, QMat) {
    let d = q.deg();
    let mut bq = QMat::zeros(d, d);
    for i in 1..d {
        bq[(i, i - 1)] = Rat::one();
    }
    for i in 0..d {
        bq[(i, d - 1)] = -q.coeff(i);
    }
    let bl = QMat::block_diag(&[QMat::identity(1), bq.clone(), bq.clone()]);
    (bq, bl)
}

/// `gcd(q, q′) = 1`.
pub fn distinct_roots(q: &QPoly) -> bool {
    !q.is_zero() && q.gcd(&q.derivative()).deg() == 0
}

/// The derivation `f` of `R^{4n−1}`: `A` in `(J_0, ω_0)`-adapted order
/// `diag(d, d, −d, −d)` per block, `d = (2j−1)/2m`, padded by a zero `3×3`.
pub fn solvmanifold_f(n: usize) -> Result<QMat, LatticeError> {
    if n < 2 {
        return Err(LatticeError::NTooSmall(n));
    }
    let m = n - 1;
    let mut entries = Vec::with_capacity(4 * n - 1);
    for j in 1..=m {
        let d = frac(2 * j as i64 - 1, 2 * m as i64);
        entries.extend([d.clone(), d.clone(), -&d, -d]);
    }
    entries.extend([Rat::zero(), Rat::zero(), Rat::zero()]);
    Ok(QMat::diagonal(&entries))
}

/// `t_ℓ = 2m·arccosh(ℓ/2)` in floating point, for display only.
pub fn t_ell_approx(ell: i64, m: usize) -> f64 {
    2.0 * m as f64 * Float::acosh(ell as f64 / 2.0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeReport {
    pub n: usize,
    pub ell: i64,
    /// Coefficients of `q`, constant term first.
    pub q: Vec<BigInt>,
    pub a_seq: Vec<BigInt>,
    pub bq: QMat,
    pub bl: QMat,
    pub t_ell_approx: String,
    pub distinct_roots: bool,
    /// `char(B_ℓ) = (x − 1) q²`, computed from `B_ℓ`.
    pub char_bl_matches: bool,
    /// The characteristic polynomial of `Φ(t_ℓ)` from its diagonal model,
    /// `(x − 1)³ ∏ (x² − a_{2j−1} x + 1)²`, equals `(x − 1) q²`.
    pub char_phi_matches: bool,
    /// The existence classification of `solvmanifold_f(n)`.
    pub existence: Existence,
}

impl LatticeReport {
    pub fn q_poly(&self) -> QPoly {
        QPoly::from_bigints(&self.q)
    }

    pub fn all_hold(&self) -> bool {
        self.distinct_roots && self.char_bl_matches && self.char_phi_matches && self.existence.is_yes()
    }
}

pub fn lattice_report(n: usize, ell: i64) -> Result<LatticeReport, LatticeError> {
    if n < 2 {
        return Err(LatticeError::NTooSmall(n));
    }
    check_ell(ell)?;
    let m = n - 1;
    let a_seq = a_sequence(ell, 2 * m)?;
    let q = build_q(ell, m)?;
    let (bq, bl) = companion_blocks(&q);
    let x_minus_one = QPoly::linear(&Rat::one());
    let target = &x_minus_one * &q.pow(2);
    let phi = (1..=m).fold(x_minus_one.pow(3), |acc, j| &acc * &quadratic(&a_seq[2 * j - 1]).pow(2));
    let existence = classify_existence(&solvmanifold_f(n)?);
    Ok(LatticeReport {
        n,
        ell,
        q: rat_poly(&q),
        a_seq,
        char_bl_matches: charpoly(&bl) == target,
        char_phi_matches: phi == target,
        distinct_roots: distinct_roots(&q),
        t_ell_approx: format!("{:.12}", t_ell_approx(ell, m)),
        bq,
        bl,
        existence,
    })
}

/// `true` when every entry of `m` is an integer.
pub fn is_integer_matrix(m: &QMat) -> bool {
    m.entries().iter().all(|x| x.is_integer())
}
