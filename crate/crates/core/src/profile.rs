//! Characteristic polynomials and primary (generalized Jordan) profiles.
//!
//! A primary profile records, for one irreducible factor `p` of the
//! characteristic polynomial, the sizes of the Jordan blocks attached to each
//! root of `p`. Block counts come from ranks of powers of `p(M)`, so no
//! eigenvalue is ever computed.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::factor::{factor_irreducible, factor_order};
use crate::matrix::QMat;
use crate::poly::QPoly;
use crate::rat::{int, Rat};
use crate::sturm::{real_root_count, sturm_count};

/// `det(xI − M)` by the Faddeev–LeVerrier recurrence. Panics on non-square input.
pub fn charpoly(m: &QMat) -> QPoly {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    let n = m.rows();
    let mut coeffs = vec![Rat::zero(); n + 1];
    coeffs[n] = Rat::one();
    let mut mk = QMat::zeros(n, n);
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1}·I ; c_{n-k} = −tr(A·M_k)/k
        let mut next = m * &mk;
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        mk = next;
        let t = (m * &mk).trace();
        coeffs[n - k] = -t / int(k as i64);
    }
    QPoly::new(coeffs)
}

/// One irreducible factor with the multiset of block sizes attached to each of its roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimaryProfile {
    pub factor: QPoly,
    /// Block sizes, largest first.
    pub block_sizes: Vec<usize>,
}

impl PrimaryProfile {
    pub fn new(factor: QPoly, mut block_sizes: Vec<usize>) -> Self {
        block_sizes.sort_unstable_by(|a, b| b.cmp(a));
        PrimaryProfile { factor, block_sizes }
    }

    /// Number of blocks of the given size.
    pub fn count(&self, size: usize) -> usize {
        self.block_sizes.iter().filter(|&&s| s == size).count()
    }

    /// Algebraic multiplicity of each root.
    pub fn multiplicity(&self) -> usize {
        self.block_sizes.iter().sum()
    }

    pub fn max_size(&self) -> usize {
        self.block_sizes.first().copied().unwrap_or(0)
    }
}

/// Profiles of `M`, one per irreducible factor of its characteristic polynomial.
pub fn primary_profiles(m: &QMat) -> Vec<PrimaryProfile> {
    let n = m.rows();
    let cp = charpoly(m);
    let mut out = Vec::new();
    for (p, mult) in factor_irreducible(&cp).expect("characteristic polynomial is nonzero") {
        let d = p.deg();
        let pm = p.eval_matrix(m);
        let mut ranks = vec![n];
        let mut power = QMat::identity(n);
        for _ in 0..=mult {
            power = &power * &pm;
            ranks.push(power.rank());
        }
        let mut sizes = Vec::new();
        for k in 1..=mult {
            let count = (ranks[k - 1] + ranks[k + 1] - 2 * ranks[k]) / d;
            sizes.extend(core::iter::repeat_n(k, count));
        }
        out.push(PrimaryProfile::new(p, sizes));
    }
    out
}

/// Sorts profiles in the canonical factor order.
pub fn sort_profiles(profiles: &mut [PrimaryProfile]) {
    profiles.sort_by(|a, b| factor_order(&a.factor, &b.factor));
}

/// How the roots of an irreducible factor sit relative to the real and imaginary axes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootClassification {
    pub n_real: usize,
    pub n_imag_pairs: usize,
    pub n_generic_pairs: usize,
    pub is_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootClassError {
    #[error("polynomial is not irreducible and monic: {0}")]
    NotIrreducible(QPoly),
}

/// Splits `p(iy)` as `A(y) + i·B(y)`.
fn imaginary_axis_parts(p: &QPoly) -> (QPoly, QPoly) {
    let mut re = vec![Rat::zero(); p.coeffs().len()];
    let mut im = vec![Rat::zero(); p.coeffs().len()];
    for (k, c) in p.coeffs().iter().enumerate() {
        match k % 4 {
            0 => re[k] = c.clone(),
            1 => im[k] = c.clone(),
            2 => re[k] = -c,
            _ => im[k] = -c,
        }
    }
    (QPoly::new(re), QPoly::new(im))
}

/// Counts real, purely imaginary and generic roots of a monic irreducible `p`.
pub fn root_classes(p: &QPoly) -> Result<RootClassification, RootClassError> {
    if !p.is_monic() || !crate::factor::is_irreducible(p) {
        return Err(RootClassError::NotIrreducible(p.clone()));
    }
    Ok(root_classes_unchecked(p))
}

/// As [`root_classes`] without re-verifying irreducibility.
pub fn root_classes_unchecked(p: &QPoly) -> RootClassification {
    if *p == QPoly::x() {
        return RootClassification { n_real: 1, n_imag_pairs: 0, n_generic_pairs: 0, is_zero: true };
    }
    let d = p.deg();
    let n_real = real_root_count(p);
    let (a, b) = imaginary_axis_parts(p);
    let g = a.gcd(&b);
    let n_imag_pairs = if g.deg() == 0 {
        0
    } else {
        sturm_count(&g, &Some(Rat::zero()), &None).expect("nondegenerate interval")
    };
    let n_generic_pairs = (d - n_real - 2 * n_imag_pairs) / 2;
    RootClassification { n_real, n_imag_pairs, n_generic_pairs, is_zero: false }
}

/// The monic factor whose roots are the negatives of those of `p`.
pub fn negation_partner(p: &QPoly) -> QPoly {
    p.reflect().monic()
}
