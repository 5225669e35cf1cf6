//! Seeded random elements of `sp(2m, C)`, `Sp(2m, C)` and of the normal-form
//! families, all as real matrices of doubled size.

use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::Rng;

use super::families::inner_size;
use super::{realify, CanonicalFParams, EquivalenceMove, Family};
use crate::matrix::QMat;
use crate::rat::{int, Rat};

fn small(rng: &mut impl Rng, bound: i64) -> Rat {
    int(rng.gen_range(-bound..=bound))
}

/// The complex matrix `Ω_C` of `Σ dz_{2i−1} ∧ dz_{2i}` on `C^{2m}`.
fn omega_c(m: usize) -> QMat {
    let mut w = QMat::zeros(2 * m, 2 * m);
    for i in 0..m {
        w[(2 * i, 2 * i + 1)] = Rat::one();
        w[(2 * i + 1, 2 * i)] = -Rat::one();
    }
    w
}

fn random_symmetric(k: usize, rng: &mut impl Rng, bound: i64) -> QMat {
    let mut s = QMat::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let v = small(rng, bound);
            s[(i, j)] = v.clone();
            s[(j, i)] = v;
        }
    }
    s
}

/// A random element of `sp(2m, C)` realified to size `4m`: `−Ω_C·S` for a
/// random complex symmetric `S` with entries in `[−bound, bound] + i[−bound, bound]`.
pub fn random_sp_complex(m: usize, rng: &mut impl Rng, bound: i64) -> QMat {
    let w = omega_c(m);
    let re = -&(&w * &random_symmetric(2 * m, rng, bound));
    let im = -&(&w * &random_symmetric(2 * m, rng, bound));
    realify(&re, &im)
}

/// A random element of `Sp(2m, C)` realified to size `4m`, as a product of
/// unipotent shears `I + Ω_C⁻¹S` with `S` supported on one Lagrangian half.
pub fn random_sp_group(m: usize, rng: &mut impl Rng, bound: i64) -> QMat {
    let k = 2 * m;
    let w_inv = -&omega_c(m);
    let mut acc = QMat::identity(2 * k);
    for round in 0..4 {
        let parity = round % 2;
        let mut re = QMat::zeros(k, k);
        let mut im = QMat::zeros(k, k);
        for s in [&mut re, &mut im] {
            let full = random_symmetric(m, rng, bound);
            for i in 0..m {
                for j in 0..m {
                    s[(2 * i + parity, 2 * j + parity)] = full[(i, j)].clone();
                }
            }
        }
        let n_re = &w_inv * &re;
        let n_im = &w_inv * &im;
        let shear = &QMat::identity(2 * k) + &realify(&n_re, &n_im);
        acc = &acc * &shear;
    }
    acc
}

/// A random move; `u_x` and `μ` have entries in `[−bound, bound]`, `λ` is a
/// nonzero ratio of small integers.
pub fn random_move(n: usize, rng: &mut impl Rng, bound: i64) -> EquivalenceMove {
    let s = 4 * n - 4;
    let delta = if s == 0 { QMat::zeros(0, 0) } else { random_sp_group(n - 1, rng, bound) };
    let mut lambda = Rat::zero();
    while lambda.is_zero() {
        lambda = small(rng, bound) / int(rng.gen_range(1..=bound.max(1)));
    }
    EquivalenceMove {
        delta,
        lambda,
        mu1: small(rng, bound),
        mu2: small(rng, bound),
        u_x: (0..s).map(|_| small(rng, bound)).collect(),
    }
}

/// Every family admissible in dimension `4n`, with random `b, c` where free.
pub fn families_for(n: usize, rng: &mut impl Rng, bound: i64) -> Vec<Family> {
    let mut out = Vec::new();
    let bc = |rng: &mut _| (small(rng, bound), small(rng, bound));
    out.push(Family::NonUnimodularPlain);
    let (b, c) = bc(rng);
    out.push(Family::UnimodularPlain { b, c });
    for p in 1..n {
        out.push(Family::NonUnimodularJordan { p });
    }
    for r in 1..=n / 2 {
        let (b, c) = bc(rng);
        out.push(Family::UnimodularOdd { r, b, c });
    }
    for s in 1..n {
        let (b, c) = bc(rng);
        out.push(Family::UnimodularEven { s, b, c });
    }
    out
}

/// `family` with a random `sp` block of the right size.
pub fn random_family_params(n: usize, family: Family, rng: &mut impl Rng, bound: i64) -> CanonicalFParams {
    let size = inner_size(n, &family).expect("family admissible for n");
    let inner = if size == 0 { QMat::zeros(0, 0) } else { random_sp_complex(size / 4, rng, bound) };
    CanonicalFParams { family, inner }
}
