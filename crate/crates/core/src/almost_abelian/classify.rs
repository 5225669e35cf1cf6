//! Existence of complex symplectic structures on `R^{4n-1} ⋊_f R`, decided
//! two ways: from Jordan-block parity conditions, and by matching the primary
//! profile of `f` against the normal forms.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::AaError;
use crate::matrix::QMat;
use crate::poly::QPoly;
use crate::profile::{negation_partner, primary_profiles, root_classes_unchecked, PrimaryProfile};
use crate::rat::Rat;

/// Which set of conditions certifies existence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CaseLabel {
    /// Non-unimodular, one extra size-1 block at `a0`.
    AI { a0: Rat },
    /// Non-unimodular, a size-`m0` block at `−a0` traded for size `m0+1` at `a0`.
    AII { a0: Rat, m0: usize },
    BI,
    BII,
    BIII { k0: usize },
    BIV { k0: usize },
}

impl CaseLabel {
    pub fn label(&self) -> &'static str {
        match self {
            CaseLabel::AI { .. } => "(a)(i)",
            CaseLabel::AII { .. } => "(a)(ii)",
            CaseLabel::BI => "(b)(i)",
            CaseLabel::BII => "(b)(ii)",
            CaseLabel::BIII { .. } => "(b)(iii)",
            CaseLabel::BIV { .. } => "(b)(iv)",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The first condition found to fail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `f` is not square of size `4n − 1`.
    Shape,
    /// `N(m, z) ≠ N(m, −z)` for the roots of this factor.
    Unpaired { factor: QPoly },
    /// A factor with real or imaginary roots has an odd block count.
    OddCount { factor: QPoly, size: usize },
    /// The zero eigenvalue breaks the parity rules at these `k`
    /// (blocks of sizes `2k − 1` and `2k`).
    ZeroParity { ks: Vec<usize> },
    /// Non-unimodular, but no eigenvalue carries one of the offset patterns.
    NoDistinguishedEigenvalue,
    /// Unimodular, and the exceptional `k0` matches none of the patterns.
    NoZeroPattern { k0: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Shape => write!(f, "f is not square of size 4n-1"),
            Violation::Unpaired { factor } => {
                write!(f, "blocks of roots of {factor} are not matched by their negatives")
            }
            Violation::OddCount { factor, size } => {
                write!(f, "odd number of size-{size} blocks for roots of {factor}")
            }
            Violation::ZeroParity { ks } => write!(f, "zero-eigenvalue parity fails at k = {ks:?}"),
            Violation::NoDistinguishedEigenvalue => {
                write!(f, "no eigenvalue a0 with an admissible offset pattern")
            }
            Violation::NoZeroPattern { k0 } => {
                write!(f, "zero-eigenvalue counts at k0 = {k0} match no admissible pattern")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Existence {
    Yes(CaseLabel),
    No(Violation),
}

impl Existence {
    pub fn is_yes(&self) -> bool {
        matches!(self, Existence::Yes(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Uniqueness {
    UniqueUpToEquivalence,
    Unknown,
}

/// Factor → block sizes (largest first).
type ProfileMap = BTreeMap<QPoly, Vec<usize>>;

fn to_map(profiles: &[PrimaryProfile]) -> ProfileMap {
    profiles.iter().map(|p| (p.factor.clone(), p.block_sizes.clone())).collect()
}

fn count(sizes: &[usize], m: usize) -> usize {
    sizes.iter().filter(|&&s| s == m).count()
}

fn count_in(map: &ProfileMap, factor: &QPoly, m: usize) -> usize {
    map.get(factor).map_or(0, |s| count(s, m))
}

fn max_size(map: &ProfileMap, factor: &QPoly) -> usize {
    map.get(factor).and_then(|s| s.iter().copied().max()).unwrap_or(0)
}

/// The parity and pairing rules for nonzero eigenvalues, skipping `skip`.
fn nonzero_rules(map: &ProfileMap, skip: &[QPoly]) -> Result<(), Violation> {
    for (p, sizes) in map {
        if *p == QPoly::x() || skip.contains(p) {
            continue;
        }
        let q = negation_partner(p);
        if q != *p && map.get(&q) != Some(sizes) {
            return Err(Violation::Unpaired { factor: p.clone() });
        }
        let rc = root_classes_unchecked(p);
        if rc.n_real > 0 || rc.n_imag_pairs > 0 {
            if let Some(&m) = sizes.iter().find(|&&m| count(sizes, m) % 2 == 1) {
                return Err(Violation::OddCount { factor: p.clone(), size: m });
            }
        }
    }
    Ok(())
}

/// `k` values at which `N(2k, 0)` is odd or `N(2k − 1, 0) ≢ 0 (mod 4)`.
fn zero_parity_failures(map: &ProfileMap) -> Vec<usize> {
    let x = QPoly::x();
    let top = max_size(map, &x);
    (1..=top.div_ceil(2))
        .filter(|&k| !count_in(map, &x, 2 * k).is_multiple_of(2) || !count_in(map, &x, 2 * k - 1).is_multiple_of(4))
        .collect()
}

/// Whether a real primary profile (of a `4m × 4m` matrix) is that of an
/// element of `sp(2m, C)` viewed as a real matrix.
pub fn sp_profile_admissible(profiles: &[PrimaryProfile]) -> bool {
    let dim: usize = profiles.iter().map(|p| p.factor.deg() * p.multiplicity()).sum();
    let map = to_map(profiles);
    dim.is_multiple_of(4) && nonzero_rules(&map, &[]).is_ok() && zero_parity_failures(&map).is_empty()
}

fn is_aa_shape(f: &QMat) -> bool {
    f.is_square() && f.rows() % 4 == 3
}

pub fn classify_existence(f: &QMat) -> Existence {
    if !is_aa_shape(f) {
        return Existence::No(Violation::Shape);
    }
    let map = to_map(&primary_profiles(f));
    let verdict = if f.trace().is_zero() { unimodular_case(&map) } else { non_unimodular_case(&map) };
    match verdict {
        Ok(label) => Existence::Yes(label),
        Err(v) => Existence::No(v),
    }
}

fn non_unimodular_case(map: &ProfileMap) -> Result<CaseLabel, Violation> {
    let failures = zero_parity_failures(map);
    if !failures.is_empty() {
        return Err(Violation::ZeroParity { ks: failures });
    }
    // an offset eigenvalue must be a simple root of its factor, so only
    // linear factors are candidates
    let candidates: Vec<Rat> = map
        .keys()
        .filter(|p| p.deg() == 1 && **p != QPoly::x())
        .map(|p| -p.coeff(0))
        .collect();
    let mut first_err = None;
    for a0 in candidates {
        let plus = QPoly::linear(&a0);
        let minus = QPoly::linear(&-&a0);
        if let Err(e) = nonzero_rules(map, &[plus.clone(), minus.clone()]) {
            first_err.get_or_insert(e);
            continue;
        }
        let top = max_size(map, &plus).max(max_size(map, &minus));
        let n_plus = |m| count_in(map, &plus, m);
        let n_minus = |m| count_in(map, &minus, m);
        if (1..=top).any(|m| n_plus(m) % 2 != 0) {
            continue;
        }
        let diff = |m: usize| n_plus(m) as i64 - n_minus(m) as i64;
        let offsets: Vec<(usize, i64)> = (1..=top).map(|m| (m, diff(m))).filter(|&(_, d)| d != 0).collect();
        match offsets.as_slice() {
            [(1, 1)] => return Ok(CaseLabel::AI { a0 }),
            [(m0, -1), (m1, 1)] if *m1 == m0 + 1 => return Ok(CaseLabel::AII { a0, m0: *m0 }),
            _ => {}
        }
    }
    Err(first_err.unwrap_or(Violation::NoDistinguishedEigenvalue))
}

fn unimodular_case(map: &ProfileMap) -> Result<CaseLabel, Violation> {
    nonzero_rules(map, &[])?;
    let failures = zero_parity_failures(map);
    let k0 = match failures.as_slice() {
        [k0] => *k0,
        _ => return Err(Violation::ZeroParity { ks: failures }),
    };
    let x = QPoly::x();
    let odd = count_in(map, &x, 2 * k0 - 1);
    let even = count_in(map, &x, 2 * k0);
    // (iii) is tested before (ii) so that k0 = 1 with N(2) ≡ 3 (mod 4) is
    // reported as (iii)
    if k0 == 1 && odd % 4 == 3 && even.is_multiple_of(2) {
        Ok(CaseLabel::BI)
    } else if odd % 4 == 1 && even % 4 == 3 {
        Ok(CaseLabel::BIII { k0 })
    } else if k0 == 1 && odd % 4 == 1 && even % 2 == 1 {
        Ok(CaseLabel::BII)
    } else if k0 >= 2 && odd % 4 == 1 && even % 2 == 1 {
        Ok(CaseLabel::BIV { k0 })
    } else {
        Err(Violation::NoZeroPattern { k0 })
    }
}

/// Block-size changes that each normal form adds on top of its `sp` block,
/// with `f` normalised to trace 1 in the non-unimodular forms.
fn family_deltas(n: usize, unimodular: bool) -> Vec<ProfileMap> {
    let x = QPoly::x;
    let one = || QPoly::linear(&Rat::one());
    let minus_one = || QPoly::linear(&-Rat::one());
    let mut out = Vec::new();
    if unimodular {
        out.push(BTreeMap::from([(x(), alloc::vec![1, 1, 1])]));
        out.push(BTreeMap::from([(x(), alloc::vec![2, 1])]));
        for r in 1..=n / 2 {
            out.push(BTreeMap::from([(x(), alloc::vec![2 * r, 2 * r, 2 * r, 2 * r - 1])]));
        }
        for s in 1..n {
            out.push(BTreeMap::from([(x(), alloc::vec![2 * s + 2, 2 * s + 1])]));
        }
    } else {
        out.push(BTreeMap::from([(one(), alloc::vec![1, 1]), (minus_one(), alloc::vec![1])]));
        for p in 1..n {
            out.push(BTreeMap::from([
                (one(), alloc::vec![p + 1, p + 1]),
                (minus_one(), alloc::vec![p + 1, p]),
            ]));
        }
    }
    out
}

/// `profile − delta` as multisets, or `None` if `delta` is not contained.
fn remove_delta(profile: &ProfileMap, delta: &ProfileMap) -> Option<Vec<PrimaryProfile>> {
    let mut rest = profile.clone();
    for (p, sizes) in delta {
        let have = rest.get_mut(p)?;
        for s in sizes {
            let pos = have.iter().position(|h| h == s)?;
            have.remove(pos);
        }
    }
    Some(
        rest.into_iter()
            .filter(|(_, s)| !s.is_empty())
            .map(|(p, s)| PrimaryProfile::new(p, s))
            .collect(),
    )
}

/// Existence decided by matching against the normal forms: after scaling `f`
/// to trace 1 (when nonzero), some family delta must be contained in the
/// profile with an `sp`-admissible remainder.
pub fn classify_existence_oracle(f: &QMat) -> bool {
    if !is_aa_shape(f) {
        return false;
    }
    let n = (f.rows() + 1) / 4;
    let tr = f.trace();
    let unimodular = tr.is_zero();
    let scale = if unimodular { Rat::one() } else { Rat::one() / &tr };
    let profile: ProfileMap = primary_profiles(f)
        .into_iter()
        .map(|p| (p.factor.scale_roots(&scale), p.block_sizes))
        .collect();
    family_deltas(n, unimodular)
        .iter()
        .filter_map(|d| remove_delta(&profile, d))
        .any(|rest| sp_profile_admissible(&rest))
}

pub fn uniqueness_hint(f: &QMat) -> Result<Uniqueness, AaError> {
    if !classify_existence(f).is_yes() {
        return Err(AaError::NoStructure);
    }
    if !f.trace().is_zero() {
        return Ok(Uniqueness::UniqueUpToEquivalence);
    }
    let n1 = primary_profiles(f)
        .iter()
        .find(|p| p.factor == QPoly::x())
        .map_or(0, |p| p.count(1));
    Ok(if n1 % 4 == 3 { Uniqueness::UniqueUpToEquivalence } else { Uniqueness::Unknown })
}
