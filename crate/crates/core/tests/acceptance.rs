//! End-to-end acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the report is always printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use csalg_core::almost_abelian::sample::{families_for, random_family_params, random_move};
use csalg_core::almost_abelian::{
    apply_equivalence, build_semidirect, canonical_family_build, canonical_j0_omega0, classify_existence,
    classify_existence_oracle, inner_size, CanonicalFParams,
};
use csalg_core::cotangent::sample::{perturb, random_valid};
use csalg_core::cotangent::{
    abelian_parallelizable_criteria, build_cotangent, check_conditions, cotangent_structure, find_j_lagrangian_ideal,
    fullrank_dim4, fullrank_dim8, h7_solution_family, lagrangian_complement, rational_circle_point,
    reconstruct_cotangent_data, rho_zero_builder, Alpha, CotangentData, H7Params,
};
use csalg_core::csgeom::{abelian_j_report, is_abelian_j, symplectic_orthogonal, two_form, verify_cs, CSStructure};
use csalg_core::fixtures::{self, dim4_f, nonuniqueness_g1, nonuniqueness_g2, rho_zero_case};
use csalg_core::lattice::{build_q, companion_blocks, solvmanifold_f, t_ell_approx};
use csalg_core::lie::{invariant_fingerprint, parse_salamon, LieAlgebra};
use csalg_core::oxidation::{
    abelian_j_conditions, build_oxidation, build_oxidation_with, steplength_generator, validate_oxidation,
    validate_oxidation_with, NuFactor,
};
use csalg_core::profile::{charpoly, primary_profiles, sort_profiles};
use csalg_core::rat::{frac, int, Rat};
use csalg_core::subspace::Subspace;
use csalg_core::{QMat, QPoly};

/// Wall-clock budgets.
const CRIT1_BUDGET: Duration = Duration::from_secs(1);
const CRIT3_BUDGET: Duration = Duration::from_secs(60);
const CRIT6_BUDGET: Duration = Duration::from_secs(10);
/// Relative residual allowed when evaluating `q` at its floating-point roots.
const ROOT_TOLERANCE: f64 = 1e-9;

const CRIT3_DRAWS: usize = 20;
const CRIT4_RANDOM: usize = 200;
const CRIT5_MOVES: usize = 50;
const CRIT7_CASES: usize = 100;
const CRIT9_PER_KIND: usize = 50;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
/// Parameter choices `(a, b, c)` and the index of the expected reference algebra.
type Regime<'a> = (&'a [(i64, i64, i64)], usize);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn verdict(alg: &LieAlgebra, s: &CSStructure) -> Result<bool, String> {
    Ok(verify_cs(alg, s).map_err(|e| e.to_string())?.verdict)
}

fn within(budget: Duration, start: Instant) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t <= budget, || format!("took {t:?}, budget {budget:?}"))?;
    Ok(t)
}

fn sorted_profiles(f: &QMat) -> Vec<csalg_core::PrimaryProfile> {
    let mut p = primary_profiles(f);
    sort_profiles(&mut p);
    p
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let cs = canonical_j0_omega0(2);
    let (g1, g2) = (nonuniqueness_g1(), nonuniqueness_g2());
    let (a1, a2) = (g1.lie_algebra(), g2.lie_algebra());
    ensure(verdict(&a1, &cs)? && verdict(&a2, &cs)?, || "verify_cs fails".into())?;
    ensure(invariant_fingerprint(&a1) == invariant_fingerprint(&a2), || "fingerprints differ".into())?;
    ensure(sorted_profiles(g1.f()) == sorted_profiles(g2.f()), || "primary profiles differ".into())?;
    let u = Subspace::coordinate(8, &[0, 1, 2, 3, 4, 5, 6]);
    let perp = symplectic_orthogonal(cs.omega(), &u);
    ensure(perp == Subspace::coordinate(8, &[4]), || format!("u^perp = {:?}", perp.vectors()))?;
    let t = within(CRIT1_BUDGET, start)?;
    Ok(format!("both verify, same fingerprint and profiles, u^perp = <e5>, {t:.2?}"))
}

fn criterion_2() -> Outcome {
    let refs = [
        parse_salamon("(-14,-24,34,0)").map_err(|e| e.to_string())?,
        parse_salamon("(0,0,0,12)").map_err(|e| e.to_string())?,
        LieAlgebra::abelian(4),
    ];
    let prints: Vec<_> = refs.iter().map(invariant_fingerprint).collect();
    ensure(prints[0] != prints[1] && prints[1] != prints[2] && prints[0] != prints[2], || "references collide".into())?;
    let regimes: [Regime; 3] = [
        (&[(1, 0, 0), (2, 1, -1), (-3, 5, 2), (1, -1, 1)], 0),
        (&[(0, 1, 0), (0, 0, 1), (0, 2, -3)], 1),
        (&[(0, 0, 0)], 2),
    ];
    for (cases, class) in regimes {
        for &(a, b, c) in cases {
            let alg = build_semidirect(&dim4_f(a, b, c)).map_err(|e| e.to_string())?;
            ensure(verdict(&alg, &canonical_j0_omega0(1))?, || format!("({a},{b},{c}) fails verify"))?;
            let fp = invariant_fingerprint(&alg);
            ensure(fp == prints[class], || format!("({a},{b},{c}) lands in the wrong class"))?;
            let shape_ok = match class {
                0 => !fp.unimodular,
                1 => fp.unimodular && fp.lower_central_dims.first() == Some(&1) && alg.lower_central_series().step == Some(2),
                _ => alg.is_abelian(),
            };
            ensure(shape_ok, || format!("({a},{b},{c}) has the wrong invariants"))?;
        }
    }
    Ok("non-unimodular / 2-step with dim g^1 = 1 / abelian; matches r4,-1,-1, rh3, R^4".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut checked = 0;
    for n in 1..=3 {
        let kinds = families_for(n, &mut rng, 3).len();
        for k in 0..kinds {
            for _ in 0..CRIT3_DRAWS {
                let family = families_for(n, &mut rng, 3).swap_remove(k);
                let params = random_family_params(n, family.clone(), &mut rng, 3);
                let aa = canonical_family_build(n, &params).map_err(|e| format!("{family:?}: {e}"))?;
                ensure(verdict(&aa.lie_algebra(), &canonical_j0_omega0(n))?, || format!("n={n} {family:?}: verify"))?;
                ensure(classify_existence(aa.f()).is_yes(), || format!("n={n} {family:?}: classified No"))?;
                checked += 1;
            }
        }
    }
    let t = within(CRIT3_BUDGET, start)?;
    Ok(format!("{checked} family members verified and classified Yes, {t:.2?}"))
}

fn random_rational_matrix(size: usize, rng: &mut impl Rng) -> QMat {
    let density = rng.gen_range(0.1..0.6);
    let mut m = QMat::zeros(size, size);
    for i in 0..size {
        for j in 0..size {
            if rng.gen_bool(density) {
                m[(i, j)] = frac(rng.gen_range(-2..=2), rng.gen_range(1..=2));
            }
        }
    }
    m
}

fn random_invertible(size: usize, rng: &mut impl Rng) -> QMat {
    loop {
        let mut p = QMat::identity(size);
        for i in 0..size {
            for j in 0..size {
                if i != j && rng.gen_bool(0.3) {
                    p[(i, j)] = int(rng.gen_range(-1..=1));
                }
            }
        }
        if !p.det().is_zero() {
            return p;
        }
    }
}

fn criterion_4() -> Outcome {
    let mut fixed: Vec<QMat> = vec![nonuniqueness_g1().f().clone(), nonuniqueness_g2().f().clone()];
    for (a, b, c) in [(1, 0, 0), (0, 1, 0), (0, 0, 0), (2, 1, -1)] {
        fixed.push(dim4_f(a, b, c));
    }
    for n in 2..=4 {
        fixed.push(solvmanifold_f(n).map_err(|e| e.to_string())?);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 1..=3 {
        for family in families_for(n, &mut rng, 2) {
            let size = inner_size(n, &family).map_err(|e| e.to_string())?;
            let p = CanonicalFParams { family, inner: QMat::zeros(size, size) };
            fixed.push(canonical_family_build(n, &p).map_err(|e| e.to_string())?.f().clone());
        }
    }
    let mut random = Vec::with_capacity(CRIT4_RANDOM);
    for k in 0..CRIT4_RANDOM {
        let size = if k % 2 == 0 { 3 } else { 7 };
        let f = if k % 4 == 1 {
            // a conjugated canonical member, so both verdicts occur in dimension 7
            let family = families_for(2, &mut rng, 2).swap_remove(rng.gen_range(0..4));
            let f = canonical_family_build(2, &random_family_params(2, family, &mut rng, 2))
                .map_err(|e| e.to_string())?
                .f()
                .clone();
            let p = random_invertible(7, &mut rng);
            &(&p * &f) * &p.inverse().expect("invertible")
        } else {
            random_rational_matrix(size, &mut rng)
        };
        random.push(f);
    }
    let (mut yes, mut no) = (0, 0);
    for (i, f) in fixed.iter().chain(&random).enumerate() {
        let a = classify_existence(f).is_yes();
        let b = classify_existence_oracle(f);
        ensure(a == b, || format!("case {i}: decision {a}, oracle {b}"))?;
        if a {
            yes += 1;
        } else {
            no += 1;
        }
    }
    Ok(format!("{} fixtures + {} random, 0 disagreements ({yes} Yes, {no} No)", fixed.len(), random.len()))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..CRIT5_MOVES {
        let n = 1 + k % 3;
        let families = families_for(n, &mut rng, 2);
        let family = families[rng.gen_range(0..families.len())].clone();
        let f = canonical_family_build(n, &random_family_params(n, family, &mut rng, 2))
            .map_err(|e| e.to_string())?
            .f()
            .clone();
        let mv = random_move(n, &mut rng, 2);
        let r = apply_equivalence(&f, &mv).map_err(|e| e.to_string())?;
        let cs = canonical_j0_omega0(n);
        let kt = &r.k_tilde;
        let d = 4 * n - 1;
        let maps_u_to_u = (0..d).all(|c| kt[(d, c)].is_zero());
        let ku = kt.block(0, d, 0, d);
        let intertwines = &ku * &f == (&r.f_tilde * &ku).scale(&mv.lambda);
        ensure(maps_u_to_u && intertwines, || format!("move {k}: K f != lambda f~ K on u"))?;
        ensure(kt * cs.j() == cs.j() * kt, || format!("move {k}: K J0 != J0 K"))?;
        ensure(&(&kt.transpose() * cs.omega()) * kt == *cs.omega(), || format!("move {k}: K^T W0 K != W0"))?;
    }
    Ok(format!("{CRIT5_MOVES} random moves satisfy all three identities"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let x_minus_1 = QPoly::linear(&Rat::from_integer(1.into()));
    let mut cases = 0;
    for ell in 3..=10i64 {
        for m in 1..=3usize {
            let q = build_q(ell, m).map_err(|e| e.to_string())?;
            ensure(q.is_monic() && q.coeff(0) == int(-1), || format!("ell={ell} m={m}: not monic with q(0) = -1"))?;
            ensure(q.gcd(&q.derivative()).deg() == 0, || format!("ell={ell} m={m}: repeated root"))?;
            let (_, bl) = companion_blocks(&q);
            ensure(charpoly(&bl) == &x_minus_1 * &q.pow(2), || format!("ell={ell} m={m}: char(Bl) mismatch"))?;
            let coeffs: Vec<f64> = q.coeffs().iter().map(|c| c.to_string().parse::<f64>().unwrap()).collect();
            let t = t_ell_approx(ell, m) / (2.0 * m as f64);
            let mut roots = vec![1.0];
            for j in 1..=m {
                let r = ((2 * j - 1) as f64 * t).exp();
                roots.extend([r, 1.0 / r]);
            }
            for r in roots {
                let value: f64 = coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c);
                let scale: f64 = coeffs.iter().enumerate().map(|(k, c)| c.abs() * r.powi(k as i32)).sum();
                ensure((value / scale).abs() < ROOT_TOLERANCE, || {
                    format!("ell={ell} m={m}: residual {} at {r}", value / scale)
                })?;
            }
            cases += 1;
        }
    }
    ensure(build_q(3, 1).map_err(|e| e.to_string())? == QPoly::from_ints(&[-1, 4, -4, 1]), || {
        "q(3, 1) != x^3 - 4x^2 + 4x - 1".into()
    })?;
    let t = within(CRIT6_BUDGET, start)?;
    Ok(format!("{cases} (ell, m) pairs exact, roots within {ROOT_TOLERANCE:e}, {t:.2?}"))
}

fn h_star(m: usize) -> Subspace {
    Subspace::coordinate(2 * m, &(0..m).collect::<Vec<_>>())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut pass, mut fail) = (0, 0);
    for k in 0..CRIT7_CASES {
        let base = random_valid(&mut rng, 3);
        let d = if k % 2 == 0 { base } else { perturb(&base, &mut rng, 2) };
        let conditions = check_conditions(&d).all_hold();
        let (alg, s) = build_cotangent(&d);
        let hs = h_star(d.half_dim());
        let direct = alg.jacobi_violation().is_none()
            && verify_cs(&alg, &s).map(|r| r.verdict).unwrap_or(false)
            && alg.is_ideal(&hs)
            && alg.is_abelian_subspace(&hs);
        ensure(conditions == direct, || format!("case {k}: conditions {conditions}, direct {direct}"))?;
        if conditions {
            pass += 1;
        } else {
            fail += 1;
        }
    }
    Ok(format!("{CRIT7_CASES} cases, 0 counterexamples ({pass} pass, {fail} fail)"))
}

fn h7_families() -> Result<Vec<CotangentData>, String> {
    let mut out = Vec::new();
    for k in 1..=3 {
        out.push(h7_solution_family(k, &H7Params::default(), None).map_err(|e| e.to_string())?);
    }
    let circle = rational_circle_point(&frac(1, 2));
    let params = H7Params { r35: int(1), r36: int(-2), ..H7Params::default() };
    out.push(h7_solution_family(4, &params, Some(circle)).map_err(|e| e.to_string())?);
    Ok(out)
}

fn rho_zero_a(n: usize) -> Result<CotangentData, String> {
    let m = 2 * n;
    let mut forms = vec![QMat::zeros(m, m); m];
    for j in 0..n {
        forms[2 * j] = two_form(m, &[(2 * j, 2 * j + 1, int(1))]);
    }
    let alpha = Alpha::from_two_forms(&forms).map_err(|e| e.to_string())?;
    rho_zero_builder(m, alpha).map_err(|e| e.to_string())
}

fn criterion_8() -> Outcome {
    for (k, d) in h7_families()?.iter().enumerate() {
        let c = check_conditions(d);
        ensure(c.all_hold(), || format!("h7 family {}: condition {:?}", k + 1, c.first_failure()))?;
        let (alg, s) = build_cotangent(d);
        ensure(alg.is_nilpotent() && verdict(&alg, &s)?, || format!("h7 family {}: build", k + 1))?;
    }
    let abelian_cases: [(&str, Option<bool>); 4] =
        [("b-i", Some(false)), ("b-ii", None), ("b-iii-0", Some(true)), ("b-iii-1", Some(true))];
    for n in [1, 2] {
        let d = rho_zero_a(n)?;
        let (alg, s) = build_cotangent(&d);
        ensure(is_abelian_j(&alg, s.j()).map_err(|e| e.to_string())?, || format!("(a) n={n}: J not Abelian"))?;
    }
    for (case, expected) in abelian_cases {
        let d = rho_zero_case(case)?;
        ensure(check_conditions(&d).all_hold(), || format!("{case}: conditions"))?;
        let (alg, s) = build_cotangent(&d);
        ensure(verdict(&alg, &s)?, || format!("{case}: verify"))?;
        if let Some(expected) = expected {
            let built = is_abelian_j(&alg, s.j()).map_err(|e| e.to_string())?;
            let predicted = abelian_parallelizable_criteria(&d).abelian.verdict;
            ensure(built == expected && predicted == expected, || format!("{case}: Abelian J {built}/{predicted}"))?;
        }
    }
    for id in ["cot-fibration", "cot-fullrank-dim4", "cot-fullrank-dim8"] {
        let fx = fixtures::find(id).ok_or_else(|| format!("missing fixture {id}"))?;
        fx.run().map_err(|e| format!("{id}: {e}"))?;
    }
    for delta in [false, true] {
        let (alg, s) = build_cotangent(&fullrank_dim8(delta));
        ensure(verdict(&alg, &s)?, || format!("dim-8 delta={delta}: verify"))?;
    }
    Ok("h7 families 1-4 valid and nilpotent; rho = 0 verdicts and dim-8 equations reproduced".into())
}

fn random_lagrangian_case(rng: &mut impl Rng, symmetric: bool) -> Result<(QMat, QMat, Subspace), String> {
    let blocks = rng.gen_range(1..=2usize);
    let size = 4 * blocks;
    let (omega, j) = if symmetric {
        let s = canonical_j0_omega0(blocks);
        (s.omega().clone(), s.j().clone())
    } else {
        let mut terms = Vec::new();
        let mut j = QMat::zeros(size, size);
        for b in 0..blocks {
            let o = 4 * b;
            terms.push((o, o + 2, int(1)));
            terms.push((o + 1, o + 3, int(1)));
            j[(o + 1, o)] = int(1);
            j[(o, o + 1)] = int(-1);
            j[(o + 3, o + 2)] = int(1);
            j[(o + 2, o + 3)] = int(-1);
        }
        (two_form(size, &terms), j)
    };
    let l = if symmetric {
        let lag: Vec<usize> = (0..blocks).flat_map(|b| [4 * b, 4 * b + 1]).collect();
        Subspace::coordinate(size, &lag)
    } else {
        Subspace::coordinate(size, &(0..blocks).flat_map(|b| [4 * b, 4 * b + 1]).collect::<Vec<_>>())
    };
    let p = random_invertible(size, rng);
    let p_inv = p.inverse().expect("invertible");
    let omega = &(&p.transpose() * &omega) * &p;
    let j = &(&p_inv * &j) * &p;
    let l = l.image(&p_inv);
    let jt_omega = &j.transpose() * &omega;
    let oj = &omega * &j;
    ensure(if symmetric { jt_omega == oj } else { jt_omega == -&oj }, || "model J has the wrong type".into())?;
    Ok((omega, j, l))
}

fn cotangent_fixtures() -> Result<Vec<CotangentData>, String> {
    let mut all = h7_families()?;
    all.push(rho_zero_a(1)?);
    all.push(rho_zero_a(2)?);
    for case in ["b-i", "b-ii", "b-iii-0", "b-iii-1"] {
        all.push(rho_zero_case(case)?);
    }
    all.push(fullrank_dim4());
    all.push(fullrank_dim8(false));
    all.push(fullrank_dim8(true));
    Ok(all)
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for symmetric in [true, false] {
        for k in 0..CRIT9_PER_KIND {
            let (omega, j, l) = random_lagrangian_case(&mut rng, symmetric)?;
            let c = lagrangian_complement(&omega, &j, &l).map_err(|e| format!("case {k}: {e}"))?;
            let ok = 2 * c.dim() == omega.rows() && c.is_isotropic(&omega) && c.is_invariant(&j) && c.intersection(&l).is_zero();
            ensure(ok, || format!("symmetric={symmetric} case {k}: complement fails"))?;
        }
    }
    let fixtures = cotangent_fixtures()?;
    for (i, d) in fixtures.iter().enumerate() {
        let (alg, s) = build_cotangent(d);
        let ideal = find_j_lagrangian_ideal(&alg, &s).ok_or_else(|| format!("fixture {i}: no ideal found"))?;
        let rec = reconstruct_cotangent_data(&alg, &s, &ideal).map_err(|e| format!("fixture {i}: {e}"))?;
        let (alg2, s2) = build_cotangent(&rec.data);
        let intertwines = alg.change_basis(&rec.iso) == alg2
            && s.change_basis(&rec.iso) == s2
            && s2 == cotangent_structure(rec.data.half_dim(), rec.data.jh());
        ensure(rec.round_trip_holds() && intertwines, || format!("fixture {i}: round trip does not intertwine"))?;
    }
    Ok(format!(
        "{CRIT9_PER_KIND} J-symmetric + {CRIT9_PER_KIND} J-skew complements; {} fixtures round-trip exactly",
        fixtures.len()
    ))
}

fn criterion_10() -> Outcome {
    let mut count = 0;
    for n in 1..=3usize {
        for m in 1..=2 * n {
            for abelian in [true, false] {
                if (m == 1 && !abelian) || (n, m, abelian) == (1, 2, false) {
                    continue;
                }
                let tag = format!("n={n} m={m} abelian={abelian}");
                let data = steplength_generator(n, m, abelian).map_err(|e| format!("{tag}: {e}"))?;
                let report = validate_oxidation(&data).map_err(|e| format!("{tag}: {e}"))?;
                ensure(report.verdict, || format!("{tag}: invalid"))?;
                let (alg, s) = build_oxidation(&data).map_err(|e| format!("{tag}: {e}"))?;
                ensure(verdict(&alg, &s)?, || format!("{tag}: verify"))?;
                let step = alg.lower_central_series().step;
                ensure(step == Some(m), || format!("{tag}: step {step:?}"))?;
                ensure(abelian_j_conditions(&data).verdict == abelian, || format!("{tag}: criterion mismatch"))?;
                ensure(is_abelian_j(&alg, s.j()).map_err(|e| e.to_string())? == abelian, || format!("{tag}: built J"))?;
                if abelian {
                    let r = abelian_j_report(&alg, &s).map_err(|e| e.to_string())?;
                    ensure(r.all_hold(), || format!("{tag}: structure items {r:?}"))?;
                    ensure((m == 2) == r.two_step.is_some(), || format!("{tag}: 2-step items"))?;
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} (n, m, flag) generator outputs have step m and the requested J type"))
}

fn criterion_11() -> Outcome {
    let data = steplength_generator(2, 4, true).map_err(|e| e.to_string())?;
    let corrected = validate_oxidation(&data).map_err(|e| e.to_string())?.verdict;
    ensure(corrected, || "corrected factor fails".into())?;
    let uncorrected = validate_oxidation_with(&data, NuFactor::Uncorrected).map_err(|e| e.to_string())?;
    let (alg, s) = build_oxidation_with(&data, NuFactor::Uncorrected).map_err(|e| e.to_string())?;
    let jacobi_fails = alg.jacobi_violation().is_some();
    let verify_fails = !verify_cs(&alg, &s).map(|r| r.verdict).unwrap_or(false);
    ensure(!uncorrected.verdict && (jacobi_fails || verify_fails), || "uncorrected factor still valid".into())?;
    Ok(format!("uncorrected factor: Jacobi fails {jacobi_fails}, verify fails {verify_fails}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("non-uniqueness pair", criterion_1),
        ("dimension-4 regimes", criterion_2),
        ("canonical family soundness", criterion_3),
        ("classifier dual-path agreement", criterion_4),
        ("equivalence moves", criterion_5),
        ("lattice family", criterion_6),
        ("cotangent conditions property", criterion_7),
        ("cotangent fixtures", criterion_8),
        ("Lagrangian complements and reconstruction", criterion_9),
        ("oxidation step lengths", criterion_10),
        ("nu-factor sensitivity", criterion_11),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
