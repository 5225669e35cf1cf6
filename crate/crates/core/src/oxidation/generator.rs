//! Nilpotent complex symplectic algebras of prescribed step by a single oxidation.

use alloc::vec::Vec;

use num_traits::One;

use super::{OxError, OxidationData, OxidationTensors};
use crate::almost_abelian::j0_inner;
use crate::csgeom::{two_form, CSStructure};
use crate::lie::{BracketEntry, LieAlgebra};
use crate::matrix::QMat;
use crate::rat::{int, vec_ops, Rat};
use crate::subspace::Subspace;

/// `ω_0` on `R^{4n−4}` whose first `4l` coordinates are paired in reverse
/// with alternating signs and whose remaining blocks are standard.
pub fn omega0_alternating(n: usize, l: usize) -> QMat {
    let d = 4 * n - 4;
    let mut terms = Vec::new();
    for j in 1..=l {
        let sign = if j % 2 == 1 { Rat::one() } else { -Rat::one() };
        let partner = 2 * (2 * l - j + 1);
        terms.push((2 * j - 2, partner - 1, sign.clone()));
        terms.push((2 * j - 1, partner - 2, sign));
    }
    for k in l + 1..n {
        terms.push((4 * k - 4, 4 * k - 1, Rat::one()));
        terms.push((4 * k - 3, 4 * k - 2, Rat::one()));
    }
    two_form(d, &terms)
}

/// The nilpotent `f_1`: two chains of length `2l` on the first `4l`
/// coordinates and one step on each later block of four.
fn f1_chains(n: usize, l: usize) -> QMat {
    let d = 4 * n - 4;
    let mut f = QMat::zeros(d, d);
    for j in 1..2 * l {
        f[(2 * j, 2 * j - 2)] = Rat::one();
        f[(2 * j + 1, 2 * j - 1)] = Rat::one();
    }
    for k in l + 1..n {
        f[(4 * k - 2, 4 * k - 4)] = Rat::one();
        f[(4 * k - 1, 4 * k - 3)] = Rat::one();
    }
    f
}

fn covector(d: usize, terms: &[(usize, i64)]) -> Vec<Rat> {
    let mut v = vec_ops::zeros(d);
    for &(i, c) in terms {
        v[i - 1] += int(c);
    }
    v
}

/// Oxidation data on `R^{4n−4}` (or `h_3 ⊕ R^{4n−7}`) whose output is
/// nilpotent of step `m`, with Abelian `J` iff `abelian`.
///
/// Requires `1 ≤ m ≤ 2n`. For `m = 1` the output is abelian and `abelian` is
/// ignored. `(n, m) = (1, 2)` exists only with Abelian `J`.
pub fn steplength_generator(n: usize, m: usize, abelian: bool) -> Result<OxidationData, OxError> {
    if n == 0 {
        return Err(OxError::ParameterRange("n must be at least 1"));
    }
    if m == 0 || m > 2 * n {
        return Err(OxError::ParameterRange("step must lie in 1..=2n"));
    }
    let d = 4 * n - 4;
    let j0 = j0_inner(d);
    let abelian_base = LieAlgebra::abelian(d);
    let mut t = OxidationTensors::zero(d);

    let (base, omega) = match m {
        1 => (abelian_base, omega0_alternating(n, 0)),
        2 if n == 1 => {
            if !abelian {
                return Err(OxError::ParameterRange("no step-2 example with non-Abelian J in dimension 4"));
            }
            t.tau12 = vec_ops::from_ints(&[1, 0]);
            (abelian_base, omega0_alternating(n, 0))
        }
        2 if abelian => {
            t.f1 = f1_chains(n, 0);
            t.f2 = -&(&j0 * &t.f1);
            t.s11 = covector(d, &[(2, 1)]);
            t.s22 = covector(d, &[(2, -1)]);
            t.s12 = covector(d, &[(1, 1)]);
            t.tau12 = vec_ops::from_ints(&[1, 0]);
            let h3 = LieAlgebra::new(d, &[BracketEntry::new(0, 1, 2, Rat::one())])
                .expect("h_3 ⊕ R^k satisfies Jacobi");
            (h3, omega0_alternating(n, 0))
        }
        2 => {
            t.f1 = f1_chains(n, 0);
            t.s11 = covector(d, &[(2, -1)]);
            t.s22 = covector(d, &[(2, 1)]);
            t.s12 = covector(d, &[(1, 1)]);
            (abelian_base, omega0_alternating(n, 0))
        }
        _ => {
            let l = (m - 1) / 2;
            t.f1 = f1_chains(n, l);
            t.f2 = -&(&j0 * &t.f1);
            let top = 4 * l - 1;
            if m % 2 == 1 {
                t.s11 = covector(d, &[(top, 1)]);
                t.s22 = covector(d, &[(top, -1)]);
                t.s12 = if abelian { covector(d, &[(top + 1, -1)]) } else { covector(d, &[(top + 1, -1), (1, 1)]) };
            } else {
                t.s11 = covector(d, &[(top, 1)]);
                t.s22 = covector(d, &[(top, 1)]);
                t.s12 = if abelian { vec_ops::zeros(d) } else { covector(d, &[(1, 1)]) };
            }
            (abelian_base, omega0_alternating(n, l))
        }
    };
    let cs = CSStructure::new(j0, omega)?;
    OxidationData::new(base, cs, t)
}

/// `z_1 ⊂ z_2 ⊂ …` with `z_{i+1} = {x : [g, x] ⊂ z_i}`, up to the first
/// repeated term.
pub fn upper_central_series(alg: &LieAlgebra) -> Vec<Subspace> {
    let n = alg.dim();
    let ads: Vec<QMat> = (0..n).map(|b| alg.ad_basis(b)).collect();
    let mut terms = Vec::new();
    let mut current = Subspace::zero(n);
    loop {
        let next = ads.iter().fold(Subspace::full(n), |acc, ad| acc.intersection(&current.preimage(ad)));
        if next.dim() == current.dim() {
            return terms;
        }
        terms.push(next.clone());
        current = next;
    }
}
