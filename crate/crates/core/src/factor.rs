//! Factorization over Q: squarefree decomposition, modular factorization at a
//! small prime, quadratic Hensel lifting, and subset recombination.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::modp::{self, Field};
use crate::poly::QPoly;
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FactorError {
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
}

/// Monic irreducible factors with multiplicities, sorted by degree then
/// coefficients. The input's leading coefficient is not reported.
pub fn factor_irreducible(p: &QPoly) -> Result<Vec<(QPoly, usize)>, FactorError> {
    if p.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (part, mult) in p.squarefree_decomposition() {
        for f in factor_squarefree(&part) {
            out.push((f, mult));
        }
    }
    out.sort_by(|a, b| factor_order(&a.0, &b.0));
    Ok(out)
}

/// Deterministic ordering used for factor lists.
pub fn factor_order(a: &QPoly, b: &QPoly) -> core::cmp::Ordering {
    a.deg().cmp(&b.deg()).then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// Whether a nonconstant polynomial is irreducible over Q.
pub fn is_irreducible(p: &QPoly) -> bool {
    match factor_irreducible(p) {
        Ok(f) => p.deg() >= 1 && f.len() == 1 && f[0].1 == 1,
        Err(_) => false,
    }
}

fn factor_squarefree(monic: &QPoly) -> Vec<QPoly> {
    let mut rest = monic.monic();
    let mut out = Vec::new();
    if rest.coeff(0).is_zero() && rest.deg() >= 1 {
        out.push(QPoly::x());
        rest = rest.exact_div(&QPoly::x());
    }
    match rest.deg() {
        0 => return out,
        1 => {
            out.push(rest);
            return out;
        }
        _ => {}
    }
    let (ints, _) = rest.to_primitive_integer();
    for g in factor_primitive_squarefree(&ints) {
        out.push(QPoly::from_bigints(&g).monic());
    }
    out
}

type ZPoly = Vec<BigInt>;

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn reduce_mod_p(f: &ZPoly, p: u64) -> modp::Poly {
    let pb = BigInt::from(p);
    let v: Vec<u64> = f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    Field::new(p).trim(v)
}

/// Irreducible factors over Z of a primitive squarefree polynomial of degree ≥ 2
/// with nonzero constant term.
fn factor_primitive_squarefree(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.len() - 1;
    let lc = f[n].clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    let mut best: Option<(u64, Vec<modp::Poly>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fld = Field::new(p);
        let fp = reduce_mod_p(f, p);
        if fp.len() != f.len() || !fld.is_squarefree(&fp) {
            continue;
        }
        let factors = fld.factor_squarefree(&fp, &mut rng);
        if factors.len() == 1 {
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|(_, b)| factors.len() < b.len()) {
            best = Some((p, factors));
        }
        tried += 1;
        if tried >= 6 {
            break;
        }
    }
    let (p, modular) = best.expect("a suitable prime always exists");

    // Coefficient bound for any factor rescaled to leading coefficient lc.
    let max_coeff = f.iter().map(|c| c.abs()).max().unwrap();
    let bound = (BigInt::one() << n) * (max_coeff * BigInt::from(n as u64 + 1)) * lc.abs();
    let target = bound * 2u32 + 1u32;
    let mut modulus = BigInt::from(p);
    while modulus <= target {
        modulus *= p;
    }

    let lifted = multifactor_lift(f, &modular, p, &modulus);
    recombine(f, lifted, &modulus)
}

fn zmod(f: &[BigInt], m: &BigInt) -> ZPoly {
    let mut v: ZPoly = f.iter().map(|c| c.mod_floor(m)).collect();
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn zmul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    zmod(&r, m)
}

fn zadd(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let v: ZPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect();
    zmod(&v, m)
}

fn zsub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    let v: ZPoly = (0..n)
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect();
    zmod(&v, m)
}

/// Division by a monic polynomial modulo `m`.
fn zdivrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    if a.len() < b.len() {
        return (Vec::new(), zmod(a, m));
    }
    let mut r: ZPoly = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (i, y) in b.iter().enumerate() {
            r[k + i] = (&r[k + i] - &c * y).mod_floor(m);
        }
        q[k] = c;
    }
    r.truncate(db);
    (zmod(&q, m), zmod(&r, m))
}

fn to_z(a: &modp::Poly) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// One quadratic Hensel step: from `f ≡ g·h`, `s·g + t·h ≡ 1 (mod m)` to the
/// same relations modulo `m²`. `h` stays monic.
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zsub(f, &zmul(g, h, &m2), &m2);
    let (q, r) = zdivrem_monic(&zmul(s, &e, &m2), h, &m2);
    let g1 = zadd(g, &zadd(&zmul(t, &e, &m2), &zmul(&q, g, &m2), &m2), &m2);
    let h1 = zadd(h, &r, &m2);
    let b = zsub(&zadd(&zmul(s, &g1, &m2), &zmul(t, &h1, &m2), &m2), &[BigInt::one()], &m2);
    let (c, d) = zdivrem_monic(&zmul(s, &b, &m2), &h1, &m2);
    let s1 = zsub(s, &d, &m2);
    let t1 = zsub(t, &zadd(&zmul(t, &b, &m2), &zmul(&c, &g1, &m2), &m2), &m2);
    (g1, h1, s1, t1)
}

/// Lifts the monic modular factors of `f` (leading coefficient `lc(f)`) to
/// monic factors modulo `target`, a power of `p`.
fn multifactor_lift(f: &[BigInt], factors: &[modp::Poly], p: u64, target: &BigInt) -> Vec<ZPoly> {
    let lc = f.last().unwrap().clone();
    if factors.len() == 1 {
        let inv = lc.modinv(target).expect("leading coefficient invertible");
        let scaled: ZPoly = f.iter().map(|c| c * &inv).collect();
        return vec![zmod(&scaled, target)];
    }
    let fld = Field::new(p);
    let (left, right) = factors.split_at(factors.len() / 2);
    let lc_p = lc.mod_floor(&BigInt::from(p)).to_u64().unwrap();
    let g0 = left.iter().fold(vec![lc_p], |acc, x| fld.mul(&acc, x));
    let h0 = right.iter().fold(vec![1u64], |acc, x| fld.mul(&acc, x));
    let (s0, t0) = fld.bezout(&g0, &h0);
    let (mut g, mut h, mut s, mut t) = (to_z(&g0), to_z(&h0), to_z(&s0), to_z(&t0));
    let mut m = BigInt::from(p);
    while &m < target {
        let fm = zmod(f, &(&m * &m));
        (g, h, s, t) = hensel_step(&fm, &g, &h, &s, &t, &m);
        m = &m * &m;
    }
    let g = zmod(&g, target);
    let h = zmod(&h, target);
    let mut out = multifactor_lift(&g, left, p, target);
    out.extend(multifactor_lift(&h, right, p, target));
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m >> 1u32;
    a.iter()
        .map(|c| {
            let c = c.mod_floor(m);
            if c > half { c - m } else { c }
        })
        .collect()
}

fn primitive(a: &[BigInt]) -> ZPoly {
    let g = a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut v: ZPoly = a.iter().map(|c| c / &g).collect();
    if v.last().is_some_and(Signed::is_negative) {
        v = v.into_iter().map(|c| -c).collect();
    }
    v
}

/// Exact division over Z, `None` when `d` does not divide `a`.
fn zdiv_exact(a: &[BigInt], d: &[BigInt]) -> Option<ZPoly> {
    let qa = QPoly::from_bigints(a);
    let qd = QPoly::from_bigints(d);
    let (q, r) = qa.div_rem(&qd);
    if !r.is_zero() {
        return None;
    }
    if q.coeffs().iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(q.coeffs().iter().map(Rat::to_integer).collect())
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn recombine(f: &[BigInt], mut lifted: Vec<ZPoly>, m: &BigInt) -> Vec<ZPoly> {
    let mut rest: ZPoly = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= lifted.len() {
        for subset in subsets(lifted.len(), size) {
            let lc = rest.last().unwrap().clone();
            let cand = subset.iter().fold(vec![lc], |acc, &i| zmul(&acc, &lifted[i], m));
            let cand = primitive(&symmetric(&cand, m));
            if let Some(q) = zdiv_exact(&rest, &cand) {
                out.push(cand);
                rest = q;
                let mut idx = 0;
                lifted.retain(|_| {
                    let keep = !subset.contains(&idx);
                    idx += 1;
                    keep
                });
                continue 'outer;
            }
        }
        size += 1;
    }
    out.push(primitive(&rest));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn documented_examples() {
        let f = factor_irreducible(&poly(&[-1, 0, 0, 0, 1])).unwrap();
        assert_eq!(f, vec![(poly(&[-1, 1]), 1), (poly(&[1, 1]), 1), (poly(&[1, 0, 1]), 1)]);
        let f = factor_irreducible(&poly(&[-1, 4, -4, 1])).unwrap();
        assert_eq!(f, vec![(poly(&[-1, 1]), 1), (poly(&[1, -3, 1]), 1)]);
        let f = factor_irreducible(&poly(&[0, 0, 1])).unwrap();
        assert_eq!(f, vec![(QPoly::x(), 2)]);
        assert!(factor_irreducible(&QPoly::zero()).is_err());
    }

    #[test]
    fn swinnerton_dyer_like_and_products() {
        // x^4 - 10x^2 + 1 is irreducible over Q but splits modulo every prime.
        let sd = poly(&[1, 0, -10, 0, 1]);
        assert!(is_irreducible(&sd));
        // x^4 + 1 likewise.
        assert!(is_irreducible(&poly(&[1, 0, 0, 0, 1])));
        let a = poly(&[2, 0, 3]);
        let b = poly(&[-5, 1, 0, 7]);
        let c = poly(&[1, 1]);
        let p = QPoly::product([(&a, 2), (&b, 1), (&c, 3), (&sd, 1)]);
        let f = factor_irreducible(&p).unwrap();
        assert_eq!(f.len(), 4);
        let rebuilt = QPoly::product(f.iter().map(|(q, e)| (q, *e)));
        assert_eq!(rebuilt, p.monic());
    }
}
