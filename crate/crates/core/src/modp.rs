//! Polynomials over a small prime field `F_p` (`p < 2^31`), used by the
//! modular stage of factorization.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use rand::Rng;

pub type Poly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub struct Field {
    pub p: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < (1 << 31));
        Field { p }
    }

    fn mul_s(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn inv(&self, a: u64) -> u64 {
        self.pow_s(a, self.p - 2)
    }

    fn pow_s(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_s(r, a);
            }
            a = self.mul_s(a, a);
            e >>= 1;
        }
        r
    }

    pub fn trim(&self, mut a: Poly) -> Poly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn degree(a: &Poly) -> usize {
        a.len().saturating_sub(1)
    }

    #[cfg(test)]
    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.len().max(b.len());
        let r = (0..n)
            .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p)
            .collect();
        self.trim(r)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        let n = a.len().max(b.len());
        let r = (0..n)
            .map(|i| {
                (a.get(i).copied().unwrap_or(0) + self.p - b.get(i).copied().unwrap_or(0)) % self.p
            })
            .collect();
        self.trim(r)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x * y) % self.p;
            }
        }
        self.trim(r)
    }

    pub fn scale(&self, a: &Poly, s: u64) -> Poly {
        self.trim(a.iter().map(|&x| self.mul_s(x, s)).collect())
    }

    pub fn monic(&self, a: &Poly) -> Poly {
        match a.last() {
            Some(&lc) => self.scale(a, self.inv(lc)),
            None => Vec::new(),
        }
    }

    pub fn div_rem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        assert!(!b.is_empty(), "division by zero in F_p[x]");
        if a.len() < b.len() {
            return (Vec::new(), a.clone());
        }
        let inv = self.inv(*b.last().unwrap());
        let db = b.len() - 1;
        let mut r = a.clone();
        let mut q = vec![0u64; a.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mul_s(r[k + db], inv);
            if c == 0 {
                continue;
            }
            for (i, &y) in b.iter().enumerate() {
                r[k + i] = (r[k + i] + self.p - self.mul_s(c, y)) % self.p;
            }
            q[k] = c;
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    pub fn rem(&self, a: &Poly, b: &Poly) -> Poly {
        self.div_rem(a, b).1
    }

    pub fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// Bezout coefficients `(s, t)` with `s·a + t·b = 1`, `deg s < deg b`,
    /// `deg t < deg a`, for coprime `a`, `b`.
    pub fn bezout(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1): (Poly, Poly) = (vec![1], Vec::new());
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        assert_eq!(r0.len(), 1, "bezout on non-coprime polynomials");
        let inv = self.inv(r0[0]);
        let s = self.rem(&self.scale(&s0, inv), b);
        // t = (1 - s a) / b
        let one_minus = self.sub(&vec![1], &self.mul(&s, a));
        let (t, rem) = self.div_rem(&one_minus, b);
        debug_assert!(rem.is_empty());
        (s, t)
    }

    pub fn derivative(&self, a: &Poly) -> Poly {
        self.trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| self.mul_s(c, k as u64 % self.p))
                .collect(),
        )
    }

    /// `base^e mod m`.
    pub fn pow_mod(&self, base: &Poly, e: &BigUint, m: &Poly) -> Poly {
        let mut result: Poly = vec![1];
        let mut b = self.rem(base, m);
        for i in 0..e.bits() {
            if e.bit(i) {
                result = self.rem(&self.mul(&result, &b), m);
            }
            b = self.rem(&self.mul(&b, &b), m);
        }
        self.rem(&result, m)
    }

    pub fn is_squarefree(&self, a: &Poly) -> bool {
        let d = self.derivative(a);
        !d.is_empty() && self.gcd(a, &d).len() == 1
    }

    /// Complete factorization of a monic squarefree polynomial into monic
    /// irreducibles (odd `p`): distinct-degree then equal-degree splitting.
    pub fn factor_squarefree<R: Rng>(&self, f: &Poly, rng: &mut R) -> Vec<Poly> {
        let mut out = Vec::new();
        let mut rest = self.monic(f);
        let x: Poly = vec![0, 1];
        let mut h = x.clone();
        let mut d = 0usize;
        let p_big = BigUint::from(self.p);
        while Self::degree(&rest) >= 2 * (d + 1) {
            d += 1;
            h = self.pow_mod(&h, &p_big, &rest);
            let g = self.gcd(&self.sub(&h, &x), &rest);
            if g.len() > 1 {
                self.split_equal_degree(&g, d, rng, &mut out);
                rest = self.div_rem(&rest, &g).0;
                h = self.rem(&h, &rest);
            }
        }
        if rest.len() > 1 {
            out.push(rest);
        }
        out
    }

    fn split_equal_degree<R: Rng>(&self, f: &Poly, d: usize, rng: &mut R, out: &mut Vec<Poly>) {
        let n = Self::degree(f);
        if n == d {
            out.push(self.monic(f));
            return;
        }
        let exp = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: Poly = self.trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let mut g = self.gcd(&a, f);
            if g.len() == 1 {
                let b = self.sub(&self.pow_mod(&a, &exp, f), &vec![1]);
                g = self.gcd(&b, f);
            }
            if g.len() > 1 && g.len() < f.len() {
                let other = self.div_rem(f, &g).0;
                self.split_equal_degree(&g, d, rng, out);
                self.split_equal_degree(&other, d, rng, out);
                return;
            }
        }
    }
}
