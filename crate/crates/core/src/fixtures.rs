//! Named worked examples with their expected outcomes, shared by the command
//! line runner and the acceptance suite.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::almost_abelian::{
    build_f_from_thm_cs, build_semidirect, canonical_j0_omega0, classify_existence, AlmostAbelianAlg,
    ThmCSParams,
};
use crate::cotangent::{
    abelian_parallelizable_criteria, build_cotangent, check_conditions, fullrank_dim4, fullrank_dim8,
    fullrank_report, h7_solution_family, rho_zero_builder, rho_zero_forms, Alpha, CotangentData, H7Params,
};
use crate::csgeom::{abelian_j_report, is_abelian_j, symplectic_orthogonal, two_form, verify_cs, CSStructure};
use crate::lattice::{build_q, lattice_report};
use crate::lie::{invariant_fingerprint, parse_salamon, BracketEntry, LieAlgebra};
use crate::matrix::QMat;
use crate::oxidation::{build_oxidation, steplength_generator, validate_oxidation, validate_oxidation_with, NuFactor};
use crate::poly::QPoly;
use crate::profile::{primary_profiles, sort_profiles, PrimaryProfile};
use crate::rat::{frac, int, vec_ops, Rat};
use crate::subspace::Subspace;

pub type FixtureResult = Result<(), String>;

pub struct Fixture {
    pub id: String,
    pub summary: String,
    check: Box<dyn Fn() -> FixtureResult + Send + Sync>,
}

impl Fixture {
    fn new(id: impl Into<String>, summary: impl Into<String>, check: impl Fn() -> FixtureResult + Send + Sync + 'static) -> Self {
        Fixture { id: id.into(), summary: summary.into(), check: Box::new(check) }
    }

    pub fn run(&self) -> FixtureResult {
        (self.check)()
    }
}

impl core::fmt::Debug for Fixture {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Fixture").field("id", &self.id).field("summary", &self.summary).finish()
    }
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> FixtureResult {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn verified(alg: &LieAlgebra, s: &CSStructure) -> FixtureResult {
    let r = verify_cs(alg, s).map_err(|e| e.to_string())?;
    ensure(r.verdict, || format!("verify_cs failed: {r:?}"))
}

/// The first algebra of the non-uniqueness pair.
pub fn nonuniqueness_g1() -> AlmostAbelianAlg {
    let mut p = ThmCSParams::zero(2);
    p.b = int(1);
    p.f_j[(0, 2)] = int(1);
    p.f_j[(1, 3)] = int(1);
    build_f_from_thm_cs(2, &p).expect("parameters lie in sp")
}

/// The second algebra of the non-uniqueness pair.
pub fn nonuniqueness_g2() -> AlmostAbelianAlg {
    let mut p = ThmCSParams::zero(2);
    p.u[3] = int(1);
    build_f_from_thm_cs(2, &p).expect("parameters lie in sp")
}

/// `f = [[a,0,b],[0,a,c],[0,0,−a]]` on `R^3`.
pub fn dim4_f(a: i64, b: i64, c: i64) -> QMat {
    QMat::from_i64_rows(&[&[a, 0, b], &[0, a, c], &[0, 0, -a]])
}

fn sorted_profiles(f: &QMat) -> Vec<PrimaryProfile> {
    let mut p = primary_profiles(f);
    sort_profiles(&mut p);
    p
}

fn expect_brackets(alg: &LieAlgebra, expected: &[(usize, usize, usize, i64)]) -> FixtureResult {
    let n = alg.dim();
    let entries: Vec<BracketEntry> = expected.iter().map(|&(i, j, k, c)| BracketEntry::new(i, j, k, int(c))).collect();
    let target = LieAlgebra::new_unchecked(n, &entries).map_err(|e| e.to_string())?;
    ensure(*alg == target, || format!("brackets differ from {expected:?}"))
}

fn nonuniqueness(which: u8) -> FixtureResult {
    let cs = canonical_j0_omega0(2);
    let (alg, brackets): (LieAlgebra, &[(usize, usize, usize, i64)]) = if which == 1 {
        (nonuniqueness_g1().lie_algebra(), &[(7, 2, 0, 1), (7, 3, 1, 1), (7, 6, 4, 1)])
    } else {
        (nonuniqueness_g2().lie_algebra(), &[(7, 0, 5, -1), (7, 1, 4, -1), (7, 6, 3, 1)])
    };
    verified(&alg, &cs)?;
    expect_brackets(&alg, brackets)?;
    if which == 1 {
        let u = Subspace::coordinate(8, &[0, 1, 2, 3, 4, 5, 6]);
        let perp = symplectic_orthogonal(cs.omega(), &u);
        ensure(perp == Subspace::coordinate(8, &[4]), || format!("u^⊥ = {perp:?}"))?;
    }
    Ok(())
}

fn nonuniqueness_compare() -> FixtureResult {
    let (g1, g2) = (nonuniqueness_g1(), nonuniqueness_g2());
    ensure(invariant_fingerprint(&g1.lie_algebra()) == invariant_fingerprint(&g2.lie_algebra()), || {
        "fingerprints differ".to_string()
    })?;
    ensure(sorted_profiles(g1.f()) == sorted_profiles(g2.f()), || "primary profiles differ".to_string())
}

fn dim4_remark() -> FixtureResult {
    let refs = [
        ("r4,-1,-1", parse_salamon("(-14,-24,34,0)").map_err(|e| e.to_string())?),
        ("rh3", parse_salamon("(0,0,0,12)").map_err(|e| e.to_string())?),
        ("R^4", LieAlgebra::abelian(4)),
    ];
    let cases: [((i64, i64, i64), usize); 7] =
        [((1, 0, 0), 0), ((2, 1, -1), 0), ((-1, 0, 3), 0), ((0, 1, 0), 1), ((0, 0, 1), 1), ((0, 2, -3), 1), ((0, 0, 0), 2)];
    let prints: Vec<_> = refs.iter().map(|(_, a)| invariant_fingerprint(a)).collect();
    for i in 0..3 {
        for j in i + 1..3 {
            ensure(prints[i] != prints[j], || format!("{} and {} share a fingerprint", refs[i].0, refs[j].0))?;
        }
    }
    for ((a, b, c), class) in cases {
        let f = dim4_f(a, b, c);
        let alg = build_semidirect(&f).map_err(|e| e.to_string())?;
        ensure(invariant_fingerprint(&alg) == prints[class], || format!("(a,b,c)=({a},{b},{c}) is not {}", refs[class].0))?;
        ensure(classify_existence(&f).is_yes(), || format!("(a,b,c)=({a},{b},{c}) not classified"))?;
        verified(&alg, &canonical_j0_omega0(1))?;
    }
    Ok(())
}

fn lattice_sweep() -> FixtureResult {
    ensure(build_q(3, 1).map_err(|e| e.to_string())? == QPoly::from_ints(&[-1, 4, -4, 1]), || "q for ℓ=3, m=1".to_string())?;
    for n in 2..=4 {
        for ell in 3..=10 {
            let r = lattice_report(n, ell).map_err(|e| e.to_string())?;
            ensure(r.all_hold(), || format!("n={n} ell={ell}: {r:?}"))?;
        }
    }
    Ok(())
}

fn h7_family(k: u8) -> Result<CotangentData, String> {
    let (params, circle) = if k == 4 {
        (H7Params { r35: int(1), r36: int(-2), ..H7Params::default() }, Some((frac(3, 5), frac(4, 5))))
    } else {
        (H7Params::default(), None)
    };
    h7_solution_family(k, &params, circle).map_err(|e| e.to_string())
}

fn cotangent_valid(d: &CotangentData) -> FixtureResult {
    let report = check_conditions(d);
    ensure(report.all_hold(), || format!("condition failure {:?}", report.first_failure()))?;
    let (alg, s) = build_cotangent(d);
    ensure(alg.jacobi_violation().is_none(), || "Jacobi fails".to_string())?;
    verified(&alg, &s)
}

fn cot_h7(k: u8) -> FixtureResult {
    let d = h7_family(k)?;
    cotangent_valid(&d)?;
    ensure(build_cotangent(&d).0.is_nilpotent(), || "not nilpotent".to_string())
}

fn cot_fibration() -> FixtureResult {
    let d = h7_family(3)?;
    let (alg, s) = build_cotangent(&d);
    let cols: Vec<_> = (0..12).map(|i| vec_ops::unit(12, if i < 6 { 6 + i } else { i - 6 })).collect();
    let p = QMat::from_columns(12, &cols);
    let terms = [(1, 2, 4), (1, 3, 5), (2, 3, 6), (2, 10, 7), (3, 11, 7), (2, 9, 8), (3, 12, 8)];
    let entries: Vec<_> = terms.iter().map(|&(i, j, k)| BracketEntry::new(i - 1, j - 1, k - 1, int(-1))).collect();
    let expected = LieAlgebra::new(12, &entries).map_err(|e| e.to_string())?;
    ensure(alg.change_basis(&p) == expected, || "structure equations differ".to_string())?;
    let omega = two_form(12, &(0..6).map(|i| (i + 6, i, int(1))).collect::<Vec<_>>());
    ensure(*s.change_basis(&p).omega() == omega, || "ω differs".to_string())
}

fn alpha4(forms: [QMat; 4]) -> Result<Alpha, String> {
    Alpha::from_two_forms(&forms).map_err(|e| e.to_string())
}

/// The `ρ = 0` examples on `R^4`: `(b)(i)`, `(b)(ii)` and `(b)(iii)` with `δ ∈ {0, 1}`.
pub fn rho_zero_case(case: &str) -> Result<CotangentData, String> {
    let [w1, w2, w3, w4, s1, s2] = rho_zero_forms();
    let z = || QMat::zeros(4, 4);
    let forms = match case {
        "b-i" => [s1, -&s2, z(), z()],
        "b-ii" => [s1, -&s2, w2, z()],
        "b-iii-0" => [w4, w3, w1.scale(&int(2)), z()],
        "b-iii-1" => [w4, w3, w1.scale(&int(2)), w2],
        _ => return Err(format!("unknown case {case}")),
    };
    rho_zero_builder(4, alpha4(forms)?).map_err(|e| e.to_string())
}

fn cot_rho_zero_a() -> FixtureResult {
    let h3r = parse_salamon("(0,0,0,12)").map_err(|e| e.to_string())?;
    for n in [1usize, 2] {
        let m = 2 * n;
        let mut forms = vec![QMat::zeros(m, m); m];
        for j in 0..n {
            forms[2 * j] = two_form(m, &[(2 * j, 2 * j + 1, int(1))]);
        }
        let alpha = Alpha::from_two_forms(&forms).map_err(|e| e.to_string())?;
        let d = rho_zero_builder(m, alpha).map_err(|e| e.to_string())?;
        cotangent_valid(&d)?;
        ensure(abelian_parallelizable_criteria(&d).abelian.verdict, || "J should be Abelian".to_string())?;
        let target = (1..n).fold(h3r.clone(), |acc, _| acc.direct_sum(&h3r));
        ensure(invariant_fingerprint(&build_cotangent(&d).0) == invariant_fingerprint(&target), || {
            format!("not (h3 ⊕ R)^{n}")
        })?;
    }
    Ok(())
}

fn cot_rho_zero_b(case: &'static str, abelian: Option<bool>) -> FixtureResult {
    let d = rho_zero_case(case)?;
    cotangent_valid(&d)?;
    if let Some(expected) = abelian {
        let crit = abelian_parallelizable_criteria(&d);
        ensure(crit.abelian.verdict == expected && crit.abelian.built == expected, || {
            format!("Abelian verdict {} / built {}, expected {expected}", crit.abelian.verdict, crit.abelian.built)
        })?;
    }
    if case.starts_with("b-iii") {
        ensure(build_cotangent(&d).0.lower_central_series().step == Some(2), || "not 2-step".to_string())?;
    }
    Ok(())
}

fn cot_fullrank_dim4() -> FixtureResult {
    let d = fullrank_dim4();
    ensure(fullrank_report(&d).map_err(|e| e.to_string())?.all_hold(), || "normal form fails".to_string())?;
    cotangent_valid(&d)?;
    let p = QMat::from_columns(
        4,
        &[vec_ops::unit(4, 2), vec_ops::unit(4, 3), vec_ops::unit(4, 0), vec_ops::neg(&vec_ops::unit(4, 1))],
    );
    expect_brackets(&build_cotangent(&d).0.change_basis(&p), &[(0, 2, 2, 1), (0, 3, 3, 1), (1, 2, 3, 1), (1, 3, 2, -1)])
}

fn cot_fullrank_dim8() -> FixtureResult {
    for (delta, text) in [
        (false, "(0,0,0,0,-15+26-37+48,-16-25-38-47,-17+28,-18-27)"),
        (true, "(0,0,0,0,-15+26-37+48,-16-25-38-47,-17+28-35+46,-18-27-36-45)"),
    ] {
        let d = fullrank_dim8(delta);
        ensure(fullrank_report(&d).map_err(|e| e.to_string())?.all_hold(), || "normal form fails".to_string())?;
        cotangent_valid(&d)?;
        let mut cols: Vec<_> = (0..4).map(|i| vec_ops::unit(8, 4 + i)).collect();
        for i in 0..4 {
            let sign: Rat = if i % 2 == 0 { int(1) } else { int(-1) };
            cols.push(vec_ops::scale(&vec_ops::unit(8, i), &sign));
        }
        let p = QMat::from_columns(8, &cols);
        let expected = parse_salamon(text).map_err(|e| e.to_string())?;
        ensure(build_cotangent(&d).0.change_basis(&p) == expected, || format!("δ={delta}: structure equations differ"))?;
    }
    Ok(())
}

/// Validity, step and Abelian verdicts of one step-length generator output.
pub fn steplength_check(n: usize, m: usize, abelian: bool) -> FixtureResult {
    let data = steplength_generator(n, m, abelian).map_err(|e| e.to_string())?;
    let report = validate_oxidation(&data).map_err(|e| e.to_string())?;
    ensure(report.verdict, || format!("validation failed: {report:?}"))?;
    let (alg, s) = build_oxidation(&data).map_err(|e| e.to_string())?;
    let step = alg.lower_central_series().step;
    ensure(step == Some(m), || format!("step {step:?}, expected {m}"))?;
    let expect_abelian = abelian || m == 1;
    let cond = crate::oxidation::abelian_j_conditions(&data);
    ensure(cond.verdict == expect_abelian, || format!("Abelian criterion gives {}", cond.verdict))?;
    let built = is_abelian_j(&alg, s.j()).map_err(|e| e.to_string())?;
    ensure(built == expect_abelian, || format!("built J Abelian: {built}"))?;
    if expect_abelian {
        let r = abelian_j_report(&alg, &s).map_err(|e| e.to_string())?;
        ensure(r.all_hold(), || format!("structure items fail: {r:?}"))?;
    }
    Ok(())
}

fn ox_erratum() -> FixtureResult {
    let data = steplength_generator(2, 4, true).map_err(|e| e.to_string())?;
    let old = validate_oxidation_with(&data, NuFactor::Uncorrected).map_err(|e| e.to_string())?;
    ensure(!old.verdict && (old.jacobi_witness.is_some() || !old.cs.verdict), || "uncorrected factor validates".to_string())
}

/// Every fixture, in a stable order.
pub fn catalog() -> Vec<Fixture> {
    let mut out = vec![
        Fixture::new("ex-nonuniqueness-g1", "first almost abelian algebra of the non-uniqueness pair", || nonuniqueness(1)),
        Fixture::new("ex-nonuniqueness-g2", "second almost abelian algebra of the non-uniqueness pair", || nonuniqueness(2)),
        Fixture::new("ex-nonuniqueness-compare", "the pair shares fingerprints and primary profiles", nonuniqueness_compare),
        Fixture::new("dim4-remark", "dimension four: r4,-1,-1, rh3 and R^4 from the three parameter regimes", dim4_remark),
        Fixture::new("lattice-sweep", "lattice polynomials and integer matrices for n ≤ 4, ℓ ≤ 10", lattice_sweep),
    ];
    for k in 1..=4u8 {
        out.push(Fixture::new(format!("cot-h7-family-{k}"), format!("cotangent extension of h7, family {k}"), move || cot_h7(k)));
    }
    out.push(Fixture::new("cot-fibration", "twelve-dimensional example with a Lagrangian fibration", cot_fibration));
    out.push(Fixture::new("cot-rho-zero-a", "ρ = 0, α_{2j−1} = e^{2j−1,2j}: (h3 ⊕ R)^n with Abelian J", cot_rho_zero_a));
    out.push(Fixture::new("cot-rho-zero-b-i", "ρ = 0 on R^4, non-Abelian J", || cot_rho_zero_b("b-i", Some(false))));
    out.push(Fixture::new("cot-rho-zero-b-ii", "ρ = 0 on R^4, second example", || cot_rho_zero_b("b-ii", None)));
    out.push(Fixture::new("cot-rho-zero-b-iii", "ρ = 0 on R^4, 2-step with Abelian J", || {
        cot_rho_zero_b("b-iii-0", Some(true))?;
        cot_rho_zero_b("b-iii-1", Some(true))
    }));
    out.push(Fixture::new("cot-fullrank-dim4", "full-rank ρ on R^2: r2'", cot_fullrank_dim4));
    out.push(Fixture::new("cot-fullrank-dim8", "full-rank ρ on R^4, both normal forms", cot_fullrank_dim8));
    for n in 1..=3usize {
        for m in 1..=2 * n {
            for abelian in [true, false] {
                if (n, m, abelian) == (1, 2, false) || (m == 1 && !abelian) {
                    continue;
                }
                let kind = if abelian { "abelian" } else { "nonabelian" };
                out.push(Fixture::new(
                    format!("ox-steplength-n{n}-m{m}-{kind}"),
                    format!("oxidation to dimension {}, step {m}, {kind} J", 4 * n),
                    move || steplength_check(n, m, abelian),
                ));
            }
        }
    }
    out.push(Fixture::new("ox-erratum", "the uncorrected ν factor breaks the even-step example", ox_erratum));
    out
}

pub fn find(id: &str) -> Option<Fixture> {
    catalog().into_iter().find(|f| f.id == id)
}
