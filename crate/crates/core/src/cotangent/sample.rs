//! Seeded random cotangent data, valid by construction or deliberately perturbed.

use alloc::vec::Vec;

use rand::Rng;

use super::{fullrank_dim8, h7_solution_family, rational_circle_point, rho_zero_forms, Alpha, CotangentData, H7Params};
use crate::matrix::QMat;
use crate::rat::{int, Rat};

fn small(rng: &mut impl Rng, bound: i64) -> Rat {
    int(rng.gen_range(-bound..=bound))
}

fn random_h7_params(rng: &mut impl Rng, bound: i64) -> H7Params {
    let mut s = || small(rng, bound);
    H7Params {
        r13: s(),
        r14: s(),
        r15: s(),
        r16: s(),
        r23: s(),
        r24: s(),
        r25: s(),
        r26: s(),
        r35: s(),
        r36: s(),
        r45: s(),
        r46: s(),
    }
}

/// A solution on `h_7` from a random family with random free entries.
pub fn random_h7(rng: &mut impl Rng, bound: i64) -> CotangentData {
    let k = rng.gen_range(1..=4u8);
    let params = random_h7_params(rng, bound);
    let mut m = Rat::from_integer(rng.gen_range(1..=bound.max(1)).into()) / int(rng.gen_range(1..=3));
    if rng.gen_bool(0.5) {
        m = -m;
    }
    h7_solution_family(k, &params, Some(rational_circle_point(&m))).expect("family relations are imposed")
}

/// `α_1..α_4` on `R^4` from the general `ρ = 0` solution with the four linear
/// relations imposed.
pub fn random_rho_zero_alpha(rng: &mut impl Rng, bound: i64) -> Alpha {
    let [w1, w2, w3, w4, s1, s2] = rho_zero_forms();
    let omegas = [w1, w2, w3, w4];
    let mut coeffs = |n: usize| -> Vec<Rat> { (0..n).map(|_| small(rng, bound)).collect() };
    let (mut a, mut b, mut c, mut d) = (coeffs(6), coeffs(4), coeffs(6), coeffs(4));
    c[0] = &b[2] + &a[3];
    d[0] = &b[3] - &a[2];
    a[1] = &c[3] - &d[2];
    b[1] = &c[2] + &d[3];
    let combo = |w: &[Rat], extra: [(&Rat, &QMat); 2], sign: [i64; 2]| {
        let mut acc = QMat::zeros(4, 4);
        for (x, f) in w.iter().zip(&omegas) {
            acc = &acc + &f.scale(x);
        }
        for ((x, f), s) in extra.into_iter().zip(sign) {
            acc = &acc + &f.scale(&(x * int(s)));
        }
        acc
    };
    let forms = [
        combo(&a[..4], [(&a[4], &s1), (&a[5], &s2)], [1, 1]),
        combo(&b, [(&a[5], &s1), (&a[4], &s2)], [1, -1]),
        combo(&c[..4], [(&c[4], &s1), (&c[5], &s2)], [1, 1]),
        combo(&d, [(&c[5], &s1), (&c[4], &s2)], [1, -1]),
    ];
    Alpha::from_two_forms(&forms).expect("four antisymmetric 4×4 forms")
}

/// Valid data from one of the worked families.
pub fn random_valid(rng: &mut impl Rng, bound: i64) -> CotangentData {
    match rng.gen_range(0..3) {
        0 => random_h7(rng, bound),
        1 => super::rho_zero_builder(4, random_rho_zero_alpha(rng, bound)).expect("relations imposed"),
        _ => fullrank_dim8(rng.gen_bool(0.5)),
    }
}

/// `d` with one random entry of `ρ` or `α` shifted by a nonzero integer.
pub fn perturb(d: &CotangentData, rng: &mut impl Rng, bound: i64) -> CotangentData {
    let m = d.half_dim();
    let mut shift = small(rng, bound);
    if shift == int(0) {
        shift = int(1);
    }
    if rng.gen_bool(0.5) {
        let mut rho = d.rho().to_vec();
        let (i, r, c) = (rng.gen_range(0..m), rng.gen_range(0..m), rng.gen_range(0..m));
        rho[i][(r, c)] += &shift;
        d.clone().with_rho(rho).expect("shape unchanged")
    } else {
        let mut alpha = d.alpha().clone();
        let i = rng.gen_range(0..m);
        let j = (i + rng.gen_range(1..m)) % m;
        let k = rng.gen_range(0..m);
        let mut v = alpha.get(i, j).clone();
        v[k] += &shift;
        alpha.set(i, j, v);
        d.clone().with_alpha(alpha).expect("shape unchanged")
    }
}
