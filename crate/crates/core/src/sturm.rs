//! Exact real-root counting with Sturm sequences.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::poly::QPoly;
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SturmError {
    #[error("degenerate interval: lower end is not below upper end")]
    DegenerateInterval,
}

/// Interval end point; `None` stands for the corresponding infinity.
pub type Bound = Option<Rat>;

fn sturm_chain(p: &QPoly) -> Vec<QPoly> {
    let mut chain = Vec::new();
    let mut a = p.clone();
    let mut b = p.derivative();
    chain.push(a.clone());
    while !b.is_zero() {
        chain.push(b.clone());
        let r = -&a.rem(&b);
        // positive rescaling keeps signs and keeps coefficients small
        let r = match r.is_zero() {
            true => r,
            false => {
                let (ints, scale) = r.to_primitive_integer();
                let q = QPoly::from_bigints(&ints);
                if scale.is_negative() { -&q } else { q }
            }
        };
        a = b;
        b = r;
    }
    chain
}

fn sign_at(p: &QPoly, x: &Bound, at_minus_infinity: bool) -> i32 {
    match x {
        Some(v) => {
            let e = p.eval(v);
            if e.is_zero() { 0 } else if e.is_positive() { 1 } else { -1 }
        }
        None => {
            let lc = if p.leading().is_positive() { 1 } else { -1 };
            if at_minus_infinity && p.deg() % 2 == 1 { -lc } else { lc }
        }
    }
}

fn variations(chain: &[QPoly], x: &Bound, at_minus_infinity: bool) -> usize {
    let signs: Vec<i32> = chain
        .iter()
        .map(|p| sign_at(p, x, at_minus_infinity))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_count(p: &QPoly, lo: &Bound, hi: &Bound) -> Result<usize, SturmError> {
    if let (Some(l), Some(h)) = (lo, hi) {
        if l >= h {
            return Err(SturmError::DegenerateInterval);
        }
    }
    if p.is_zero() || p.deg() == 0 {
        return Ok(0);
    }
    let chain = sturm_chain(&p.squarefree_part());
    let vl = variations(&chain, lo, true);
    let vh = variations(&chain, hi, false);
    Ok(vl - vh)
}

/// Distinct real roots over the whole line.
pub fn real_root_count(p: &QPoly) -> usize {
    sturm_count(p, &None, &None).expect("infinite interval is never degenerate")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    #[test]
    fn documented_counts() {
        assert_eq!(real_root_count(&QPoly::from_ints(&[-2, 0, 1])), 2);
        assert_eq!(real_root_count(&QPoly::from_ints(&[1, 0, 1])), 0);
        let q = QPoly::from_ints(&[-1, 4, -4, 1]);
        assert_eq!(sturm_count(&q, &Some(int(0)), &None).unwrap(), 3);
        assert!(sturm_count(&q, &Some(int(1)), &Some(int(1))).is_err());
    }

    #[test]
    fn half_open_interval() {
        // roots 1, 2, 3
        let p = QPoly::product([
            (&QPoly::from_ints(&[-1, 1]), 1),
            (&QPoly::from_ints(&[-2, 1]), 2),
            (&QPoly::from_ints(&[-3, 1]), 1),
        ]);
        assert_eq!(sturm_count(&p, &Some(int(1)), &Some(int(2))).unwrap(), 1);
        assert_eq!(sturm_count(&p, &Some(int(0)), &Some(int(3))).unwrap(), 3);
        assert_eq!(sturm_count(&p, &Some(int(3)), &None).unwrap(), 0);
    }
}
