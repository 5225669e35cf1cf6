//! Arbitrary-precision rationals and small helpers around them.

use alloc::string::String;
use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number with a positive, coprime denominator.
pub type Rat = BigRational;

/// A dense rational vector.
pub type QVec = Vec<Rat>;

/// Integer constant as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `num / den` as a reduced rational. Panics on a zero denominator.
pub fn frac(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Error returned when a rational literal is malformed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRatError(pub String);

/// Parses `"p"`, `"-p"` or `"p/q"` with `q > 0`.
pub fn parse_rat(text: &str) -> Result<Rat, ParseRatError> {
    let err = || ParseRatError(String::from(text));
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = match den {
        Some(d) => {
            let d = BigInt::from_str(d).map_err(|_| err())?;
            if !d.is_positive() {
                return Err(err());
            }
            d
        }
        None => BigInt::one(),
    };
    Ok(Rat::new(num, den))
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Helpers on dense rational vectors.
pub mod vec_ops {
    use super::*;

    pub fn zeros(n: usize) -> QVec {
        alloc::vec![Rat::zero(); n]
    }

    /// The `i`-th standard basis vector of length `n`.
    pub fn unit(n: usize, i: usize) -> QVec {
        let mut v = zeros(n);
        v[i] = Rat::one();
        v
    }

    pub fn from_ints(values: &[i64]) -> QVec {
        values.iter().map(|&x| int(x)).collect()
    }

    pub fn is_zero(v: &[Rat]) -> bool {
        v.iter().all(Zero::is_zero)
    }

    pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
        a.iter()
            .zip(b)
            .filter(|(x, y)| !x.is_zero() && !y.is_zero())
            .fold(Rat::zero(), |acc, (x, y)| acc + x * y)
    }

    pub fn add(a: &[Rat], b: &[Rat]) -> QVec {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(a: &[Rat], b: &[Rat]) -> QVec {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(a: &[Rat], s: &Rat) -> QVec {
        a.iter().map(|x| x * s).collect()
    }

    pub fn neg(a: &[Rat]) -> QVec {
        a.iter().map(|x| -x).collect()
    }

    /// `acc += s * v`.
    pub fn axpy(acc: &mut [Rat], s: &Rat, v: &[Rat]) {
        if s.is_zero() {
            return;
        }
        for (a, x) in acc.iter_mut().zip(v) {
            if !x.is_zero() {
                *a += s * x;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rat("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_rat("-7").unwrap(), int(-7));
        assert_eq!(parse_rat(" 4 / 2 ").unwrap(), int(2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("1/-2").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(frac(-2, 4).to_string(), "-1/2");
        assert_eq!(int(5).to_string(), "5");
    }
}
