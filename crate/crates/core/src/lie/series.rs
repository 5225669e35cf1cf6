//! Central and derived series, codimension-one Abelian ideals and a cheap
//! isomorphism-invariant fingerprint.

use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::LieAlgebra;
use crate::matrix::QMat;
use crate::profile::{primary_profiles, root_classes_unchecked};
use crate::rat::{int, vec_ops, QVec, Rat};
use crate::subspace::Subspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    LowerCentral,
    Derived,
}

/// Terms `C¹ = [g,g], C², …` listed until they vanish or stabilise.
///
/// `step` is the least `m` with `C^m = 0` (counting `C⁰ = g`), so an Abelian
/// algebra has step 1 and the Heisenberg algebra step 2. It is `None` when the
/// series stabilises at a nonzero term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace>,
    pub step: Option<usize>,
}

impl SeriesReport {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }
}

fn series(alg: &LieAlgebra, kind: SeriesKind) -> SeriesReport {
    let full = Subspace::full(alg.dim());
    let mut current = alg.commutator_ideal();
    let mut terms = vec![current.clone()];
    let mut step = None;
    loop {
        if current.is_zero() {
            step = Some(terms.len());
            break;
        }
        let next = match kind {
            SeriesKind::LowerCentral => alg.bracket_space(&full, &current),
            SeriesKind::Derived => alg.bracket_space(&current, &current),
        };
        if next == current {
            break;
        }
        terms.push(next.clone());
        current = next;
    }
    SeriesReport { kind, terms, step }
}

impl LieAlgebra {
    pub fn lower_central_series(&self) -> SeriesReport {
        series(self, SeriesKind::LowerCentral)
    }

    pub fn derived_series(&self) -> SeriesReport {
        series(self, SeriesKind::Derived)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().step.is_some()
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().step.is_some()
    }
}

/// Shape of an algebra with more than one codimension-one Abelian ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MultipleKind {
    Abelian,
    /// Heisenberg times an Abelian factor: 2-step, `dim g¹ = 1`, `dim z = dim − 2`.
    HeisenbergTimesAbelian,
    /// Fails both structural checks; never expected.
    Unrecognized,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Codim1Ideals {
    NoneFound,
    Unique(Subspace),
    Multiple { witnesses: [Subspace; 2], kind: MultipleKind },
}

impl Codim1Ideals {
    pub fn count_hint(&self) -> &'static str {
        match self {
            Codim1Ideals::NoneFound => "none",
            Codim1Ideals::Unique(_) => "unique",
            Codim1Ideals::Multiple { .. } => "multiple",
        }
    }
}

/// Covectors `λ` with `ker λ` a codimension-one Abelian ideal, plus zero.
///
/// `ker λ` is an ideal iff `λ` kills `g¹`, and it is Abelian iff every
/// component 2-form `B_k(x,y) = e^k([x,y])` vanishes on it, i.e. `λ ∧ B_k = 0`.
/// Both conditions are linear in `λ`.
fn abelian_hyperplane_covectors(alg: &LieAlgebra) -> Subspace {
    let n = alg.dim();
    let mut rows: Vec<QVec> = alg.commutator_ideal().vectors();
    for k in 0..n {
        let b = |i: usize, j: usize| alg.structure_constant(i, j, k);
        for i in 0..n {
            for j in i + 1..n {
                for l in j + 1..n {
                    let (bjl, bil, bij) = (b(j, l), b(i, l), b(i, j));
                    if bjl == int(0) && bil == int(0) && bij == int(0) {
                        continue;
                    }
                    let mut row = vec_ops::zeros(n);
                    row[i] = bjl;
                    row[j] = -bil;
                    row[l] = bij;
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return Subspace::full(n);
    }
    Subspace::kernel_of(&QMat::from_rows(rows))
}

fn hyperplane(lambda: &[Rat]) -> Subspace {
    Subspace::kernel_of(&QMat::from_rows(vec![lambda.to_vec()]))
}

/// Codimension-one Abelian ideals of `alg`.
pub fn codim1_abelian_ideals(alg: &LieAlgebra) -> Codim1Ideals {
    let n = alg.dim();
    if n == 0 {
        return Codim1Ideals::NoneFound;
    }
    let lambdas = abelian_hyperplane_covectors(alg).vectors();
    match lambdas.len() {
        0 => Codim1Ideals::NoneFound,
        1 => Codim1Ideals::Unique(hyperplane(&lambdas[0])),
        _ => {
            let kind = if alg.is_abelian() {
                MultipleKind::Abelian
            } else if alg.lower_central_series().step == Some(2)
                && alg.commutator_ideal().dim() == 1
                && alg.center().dim() + 2 == n
            {
                MultipleKind::HeisenbergTimesAbelian
            } else {
                MultipleKind::Unrecognized
            };
            Codim1Ideals::Multiple {
                witnesses: [hyperplane(&lambdas[0]), hyperplane(&lambdas[1])],
                kind,
            }
        }
    }
}

/// Jordan data of a generic `ad_X` with the factor polynomials forgotten.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProfileShape {
    pub factor_degree: usize,
    pub n_real_roots: usize,
    pub is_zero: bool,
    pub block_sizes: Vec<usize>,
}

/// Basis-independent data, used as an isomorphism surrogate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub dim: usize,
    pub lower_central_dims: Vec<usize>,
    pub derived_dims: Vec<usize>,
    pub center_dim: usize,
    pub unimodular: bool,
    pub generic_ad_profile: Vec<ProfileShape>,
}

const FINGERPRINT_SEED: u64 = 0xf1_6e_7a_11;
const FINGERPRINT_TRIALS: usize = 3;

fn ad_shape(alg: &LieAlgebra, x: &[Rat]) -> Vec<ProfileShape> {
    let mut shape: Vec<ProfileShape> = primary_profiles(&alg.ad(x))
        .into_iter()
        .map(|p| {
            let rc = root_classes_unchecked(&p.factor);
            ProfileShape {
                factor_degree: p.factor.deg(),
                n_real_roots: rc.n_real,
                is_zero: rc.is_zero,
                block_sizes: p.block_sizes,
            }
        })
        .collect();
    shape.sort();
    shape
}

/// Invariants of `alg`; the `ad_X` shape is a majority vote over a few
/// deterministic pseudo-random rational `X`.
pub fn invariant_fingerprint(alg: &LieAlgebra) -> Fingerprint {
    let n = alg.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(FINGERPRINT_SEED);
    let mut votes: Vec<(Vec<ProfileShape>, usize)> = Vec::new();
    for _ in 0..FINGERPRINT_TRIALS {
        let x: QVec = (0..n).map(|_| int(rng.gen_range(-97..=97))).collect();
        let shape = ad_shape(alg, &x);
        match votes.iter_mut().find(|(s, _)| *s == shape) {
            Some((_, c)) => *c += 1,
            None => votes.push((shape, 1)),
        }
    }
    // ties go to the shape with the fewest zero-root blocks, i.e. the generic one
    votes.sort_by(|a, b| {
        b.1.cmp(&a.1).then_with(|| zero_blocks(&a.0).cmp(&zero_blocks(&b.0)))
    });
    Fingerprint {
        dim: n,
        lower_central_dims: alg.lower_central_series().dims(),
        derived_dims: alg.derived_series().dims(),
        center_dim: alg.center().dim(),
        unimodular: alg.is_unimodular(),
        generic_ad_profile: votes.into_iter().next().map(|v| v.0).unwrap_or_default(),
    }
}

fn zero_blocks(shape: &[ProfileShape]) -> usize {
    shape.iter().filter(|s| s.is_zero).map(|s| s.block_sizes.iter().sum::<usize>()).sum()
}
