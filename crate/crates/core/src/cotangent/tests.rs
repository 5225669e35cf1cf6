use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::sample::{perturb, random_h7, random_rho_zero_alpha, random_valid};
use super::*;
use crate::csgeom::{is_j_symmetric, two_form, verify_cs};
use crate::lie::{invariant_fingerprint, parse_salamon, BracketEntry};
use crate::rat::{frac, int};
use crate::subspace::Subspace;

fn h_star(m: usize) -> Subspace {
    Subspace::coordinate(2 * m, &(0..m).collect::<Vec<_>>())
}

fn valid_build(d: &CotangentData) -> bool {
    let (alg, s) = build_cotangent(d);
    let m = d.half_dim();
    alg.jacobi_violation().is_none()
        && verify_cs(&alg, &s).unwrap().verdict
        && alg.is_ideal(&h_star(m))
        && alg.is_abelian_subspace(&h_star(m))
}

fn abelian_data(m: usize) -> CotangentData {
    CotangentData::new(LieAlgebra::abelian(m), j0_inner_for(m), vec![QMat::zeros(m, m); m], Alpha::zero(m)).unwrap()
}

fn j0_inner_for(m: usize) -> QMat {
    crate::almost_abelian::j0_inner(m)
}

fn alpha_from(forms: [QMat; 4]) -> Alpha {
    Alpha::from_two_forms(&forms).unwrap()
}

#[test]
fn trivial_extension_is_abelian() {
    for m in [2, 4] {
        let d = abelian_data(m);
        assert!(check_conditions(&d).all_hold());
        let (alg, s) = build_cotangent(&d);
        assert!(alg.is_abelian());
        assert!(verify_cs(&alg, &s).unwrap().verdict);
    }
}

#[test]
fn h7_family_three_is_nilpotent_solution() {
    let d = h7_solution_family(3, &H7Params::default(), None).unwrap();
    let report = check_conditions(&d);
    assert!(report.all_hold(), "{report:?}");
    let (alg, s) = build_cotangent(&d);
    assert!(verify_cs(&alg, &s).unwrap().verdict);
    assert!(alg.is_nilpotent());
}

#[test]
fn lagrangian_fibration_example_structure_equations() {
    let d = h7_solution_family(3, &H7Params::default(), None).unwrap();
    let (alg, s) = build_cotangent(&d);
    // f_1..f_6 = e_1..e_6, f_7..f_12 = e^1..e^6
    let cols: Vec<_> = (0..12).map(|i| vec_ops::unit(12, if i < 6 { 6 + i } else { i - 6 })).collect();
    let p = QMat::from_columns(12, &cols);
    // df^k = f^{ij} means [f_i, f_j] = −f_k
    let terms = [(1, 2, 4), (1, 3, 5), (2, 3, 6), (2, 10, 7), (3, 11, 7), (2, 9, 8), (3, 12, 8)];
    let entries: Vec<_> = terms.iter().map(|&(i, j, k)| BracketEntry::new(i - 1, j - 1, k - 1, int(-1))).collect();
    let expected = LieAlgebra::new(12, &entries).unwrap();
    assert_eq!(alg.change_basis(&p), expected);
    let omega = two_form(12, &(0..6).map(|i| (i + 6, i, int(1))).collect::<Vec<_>>());
    assert_eq!(*s.change_basis(&p).omega(), omega);
}

#[test]
fn h7_families_pass_conditions() {
    let one = H7Params::default();
    let d = h7_solution_family(1, &one, None).unwrap();
    assert_eq!(d.rho()[0][(1, 3)], int(-2));
    assert!(check_conditions(&d).all_hold());

    let d = h7_solution_family(4, &H7Params { r35: int(1), r36: int(-2), ..H7Params::default() }, Some((frac(3, 5), frac(4, 5))))
        .unwrap();
    assert!(check_conditions(&d).all_hold());
    assert_eq!(d.rho()[0][(3, 4)], int(2));

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let d = random_h7(&mut rng, 3);
        assert!(check_conditions(&d).all_hold());
        let (alg, _) = build_cotangent(&d);
        assert!(alg.is_nilpotent());
    }
}

#[test]
fn h7_family_errors() {
    let p = H7Params::default();
    assert!(matches!(h7_solution_family(5, &p, None), Err(CotError::Constraint(_))));
    assert!(matches!(h7_solution_family(4, &p, None), Err(CotError::Constraint(_))));
    assert!(matches!(h7_solution_family(4, &p, Some((int(-1), int(0)))), Err(CotError::Constraint(_))));
    assert!(matches!(h7_solution_family(4, &p, Some((int(1), int(1)))), Err(CotError::Constraint(_))));
    assert_eq!(rational_circle_point(&frac(1, 2)), (frac(3, 5), frac(4, 5)));
}

#[test]
fn broken_quadratic_relation_fails_morphism() {
    let base = h7_solution_family(3, &H7Params::default(), None).unwrap();
    let d = base.with_rho(examples::h7_rho(&H7Params { r45: int(1), ..H7Params::default() })).unwrap();
    let report = check_conditions(&d);
    assert!(!report.c2_morphism.holds);
    assert!(report.c2_morphism.witness.is_some());
    assert!(report.c5_rho_omega.holds && report.c6_rho_type.holds);
}

#[test]
fn alpha_of_type_02_fails() {
    let [_, _, _, _, s1, s2] = rho_zero_forms();
    let z = QMat::zeros(4, 4);
    let bad = alpha_from([s1.clone(), s2.clone(), z.clone(), z.clone()]);
    let d = abelian_data(4).with_alpha(bad.clone()).unwrap();
    let report = check_conditions(&d);
    assert!(!report.c4_alpha_type.holds);
    assert!(no_02_part_witness(&bad, d.jh()).is_some());
    assert!(matches!(rho_zero_builder(4, bad), Err(CotError::Condition { .. })));
}

#[test]
fn rho_zero_examples() {
    let [w1, w2, w3, w4, s1, s2] = rho_zero_forms();
    let z = QMat::zeros(4, 4);

    // (a): α_{2j−1} = e^{2j−1,2j}
    for n in [1usize, 2] {
        let m = 2 * n;
        let mut forms = vec![QMat::zeros(m, m); m];
        for j in 0..n {
            forms[2 * j] = two_form(m, &[(2 * j, 2 * j + 1, int(1))]);
        }
        let d = rho_zero_builder(m, Alpha::from_two_forms(&forms).unwrap()).unwrap();
        assert!(check_conditions(&d).all_hold());
        assert!(abelian_parallelizable_criteria(&d).abelian.verdict);
        let (alg, _) = build_cotangent(&d);
        let h3r = parse_salamon("(0,0,0,12)").unwrap();
        let mut target = h3r.clone();
        for _ in 1..n {
            target = target.direct_sum(&h3r);
        }
        assert_eq!(invariant_fingerprint(&alg), invariant_fingerprint(&target));
    }

    // (b)(i): α_1 = σ_1, α_2 = −σ_2
    let d = rho_zero_builder(4, alpha_from([s1.clone(), -&s2, z.clone(), z.clone()])).unwrap();
    assert!(valid_build(&d));
    let crit = abelian_parallelizable_criteria(&d);
    assert!(!crit.abelian.verdict && !crit.abelian.built);

    // (b)(ii)
    let d = rho_zero_builder(4, alpha_from([s1.clone(), -&s2, w2.clone(), z.clone()])).unwrap();
    assert!(valid_build(&d));

    // (b)(iii)
    for delta in [0, 1] {
        let forms = [w4.clone(), w3.clone(), w1.scale(&int(2)), w2.scale(&int(delta))];
        let d = rho_zero_builder(4, alpha_from(forms)).unwrap();
        assert!(valid_build(&d));
        let crit = abelian_parallelizable_criteria(&d);
        assert!(crit.abelian.verdict && crit.abelian.built);
        let (alg, _) = build_cotangent(&d);
        assert_eq!(alg.lower_central_series().step, Some(2));
    }
}

#[test]
fn rho_zero_general_solution() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let d = rho_zero_builder(4, random_rho_zero_alpha(&mut rng, 3)).unwrap();
        assert!(valid_build(&d));
    }
    // breaking c_1 = b_3 + a_4
    let [w1, _, _, _, _, _] = rho_zero_forms();
    let z = QMat::zeros(4, 4);
    let bad = alpha_from([z.clone(), z.clone(), w1, z]);
    assert!(rho_zero_builder(4, bad).is_err());
}

#[test]
fn full_rank_normal_forms() {
    let d4 = fullrank_dim4();
    let report = fullrank_report(&d4).unwrap();
    assert!(report.all_hold(), "{report:?}");
    assert!(check_conditions(&d4).all_hold());
    // basis (e_1, e_2, e^1, −e^2)
    let p = QMat::from_columns(
        4,
        &[vec_ops::unit(4, 2), vec_ops::unit(4, 3), vec_ops::unit(4, 0), vec_ops::neg(&vec_ops::unit(4, 1))],
    );
    let (alg, s) = build_cotangent(&d4);
    let moved = alg.change_basis(&p);
    let r2 = LieAlgebra::new(
        4,
        &[
            BracketEntry::new(0, 2, 2, int(1)),
            BracketEntry::new(0, 3, 3, int(1)),
            BracketEntry::new(1, 2, 3, int(1)),
            BracketEntry::new(1, 3, 2, int(-1)),
        ],
    )
    .unwrap();
    assert_eq!(moved, r2);
    let s = s.change_basis(&p);
    let j_expected = QMat::from_i64_rows(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
    assert_eq!(*s.j(), j_expected);
    assert_eq!(*s.omega(), two_form(4, &[(0, 2, int(-1)), (1, 3, int(1))]));

    for (delta, text) in [
        (false, "(0,0,0,0,-15+26-37+48,-16-25-38-47,-17+28,-18-27)"),
        (true, "(0,0,0,0,-15+26-37+48,-16-25-38-47,-17+28-35+46,-18-27-36-45)"),
    ] {
        let d = fullrank_dim8(delta);
        assert!(fullrank_report(&d).unwrap().all_hold());
        assert!(check_conditions(&d).all_hold());
        let (alg, s) = build_cotangent(&d);
        let mut cols = Vec::new();
        for i in 0..4 {
            cols.push(vec_ops::unit(8, 4 + i));
        }
        for i in 0..4 {
            let sign = if i % 2 == 0 { int(1) } else { int(-1) };
            cols.push(vec_ops::scale(&vec_ops::unit(8, i), &sign));
        }
        let p = QMat::from_columns(8, &cols);
        assert_eq!(alg.change_basis(&p), parse_salamon(text).unwrap());
        let s = s.change_basis(&p);
        let mut j = QMat::zeros(8, 8);
        for i in 0..4 {
            j[(2 * i + 1, 2 * i)] = int(1);
            j[(2 * i, 2 * i + 1)] = int(-1);
        }
        assert_eq!(*s.j(), j);
        let omega = two_form(8, &[(0, 4, int(1)), (1, 5, int(-1)), (2, 6, int(1)), (3, 7, int(-1))]);
        assert_eq!(*s.omega(), -&omega);
        assert!(verify_cs(&alg, &build_cotangent(&d).1).unwrap().verdict);
        assert_eq!(alg.derived_series().step, Some(2));
    }
}

#[test]
fn full_rank_violations_have_witnesses() {
    let d = fullrank_dim8(true);
    let mut rho = d.rho().to_vec();
    rho[2][(2, 1)] += int(1);
    let bad = d.with_rho(rho).unwrap();
    let report = fullrank_report(&bad).unwrap();
    assert!(!report.all_hold());
    assert!(!report.symmetric.holds || !report.j_anti.holds || !report.cubic_symmetric.holds);
    assert!(fullrank_report(&h7_solution_family(3, &H7Params::default(), None).unwrap()).is_err());
}

#[test]
fn conditions_match_validity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc07a);
    let mut valid = 0;
    let mut invalid = 0;
    for round in 0..120 {
        let base = random_valid(&mut rng, 3);
        let d = if round % 2 == 0 { base } else { perturb(&base, &mut rng, 2) };
        let holds = check_conditions(&d).all_hold();
        assert_eq!(holds, valid_build(&d), "round {round}");
        if holds {
            valid += 1;
        } else {
            invalid += 1;
        }
        let (alg, s) = build_cotangent(&d);
        assert!(is_j_symmetric(s.j(), s.omega()));
        let hs = h_star(d.half_dim());
        assert!(hs.is_isotropic(s.omega()) && hs.is_invariant(s.j()));
        let _ = alg;
    }
    assert!(valid >= 40 && invalid >= 30, "{valid} valid, {invalid} invalid");
}

#[test]
fn criteria_match_built_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xab);
    for _ in 0..50 {
        let d = random_valid(&mut rng, 2);
        let c = abelian_parallelizable_criteria(&d);
        assert_eq!(c.abelian.verdict, c.abelian.built);
        assert_eq!(c.parallelizable.verdict, c.parallelizable.built);
    }
    let c = abelian_parallelizable_criteria(&abelian_data(4));
    assert!(c.abelian.verdict && c.parallelizable.verdict);
}

fn check_complement(omega: &QMat, j: &QMat, l: &Subspace) -> Subspace {
    let lc = lagrangian_complement(omega, j, l).unwrap();
    assert_eq!(lc.dim(), l.dim());
    assert!(lc.is_isotropic(omega));
    assert!(lc.is_invariant(j));
    assert!(lc.intersection(l).is_zero());
    lc
}

#[test]
fn lagrangian_complements() {
    let cs = crate::almost_abelian::canonical_j0_omega0(1);
    let l = Subspace::coordinate(4, &[0, 1]);
    check_complement(cs.omega(), cs.j(), &l);

    // J skew for Ω
    let omega = two_form(4, &[(0, 2, int(1)), (1, 3, int(1))]);
    let j = QMat::from_i64_rows(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
    assert_eq!(&j.transpose() * &omega, -&(&omega * &j));
    let lc = check_complement(&omega, &j, &l);
    // already g-orthogonal to a Lagrangian complement: the correction vanishes
    assert_eq!(lc, Subspace::coordinate(4, &[2, 3]));

    // a tilted Lagrangian with a nonzero correction
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let d = random_h7(&mut rng, 2);
        let (_, s) = build_cotangent(&d);
        let p = crate::almost_abelian::sample::random_sp_group(3, &mut rng, 1);
        // p preserves a complex symplectic form on R^12; use it only as a basis change
        let moved = s.change_basis(&p);
        let l = h_star(6).image(&p.inverse().unwrap());
        check_complement(moved.omega(), moved.j(), &l);
    }

    let not_lag = Subspace::coordinate(4, &[0]);
    assert!(matches!(lagrangian_complement(cs.omega(), cs.j(), &not_lag), Err(CotError::Precondition(_))));
    let not_inv = Subspace::coordinate(4, &[0, 3]);
    assert!(lagrangian_complement(cs.omega(), cs.j(), &not_inv).is_err());
}

fn is_j_lag_ideal(alg: &LieAlgebra, s: &CSStructure, c: &Subspace) -> bool {
    2 * c.dim() == alg.dim() && c.is_isotropic(s.omega()) && c.is_invariant(s.j()) && alg.is_ideal(c)
}

#[test]
fn ideal_search_and_reconstruction() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut cases: Vec<CotangentData> = (0..12).map(|_| random_valid(&mut rng, 2)).collect();
    cases.push(abelian_data(4));
    cases.push(h7_solution_family(3, &H7Params::default(), None).unwrap());
    for d in &cases {
        let (alg, s) = build_cotangent(d);
        let found = find_j_lagrangian_ideal(&alg, &s).expect("h* is a candidate");
        assert!(is_j_lag_ideal(&alg, &s, &found));
        assert_eq!(found, h_star(d.half_dim()));

        let rec = reconstruct_cotangent_data(&alg, &s, &h_star(d.half_dim())).unwrap();
        assert!(rec.round_trip_holds());
        assert_eq!(rec.data.h(), d.h());
        assert_eq!(rec.data.jh(), d.jh());
        assert!(check_conditions(&rec.data).all_hold());

        let rec = reconstruct_cotangent_data(&alg, &s, &found).unwrap();
        assert!(rec.round_trip_holds());
    }
}

#[test]
fn reconstruction_of_h3_plus_r() {
    let alg = parse_salamon("(0,0,0,12)").unwrap();
    let j = QMat::from_i64_rows(&[&[0, -1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, -1], &[0, 0, 1, 0]]);
    let s = CSStructure::new(j, two_form(4, &[(0, 2, int(1)), (1, 3, int(-1))])).unwrap();
    assert!(verify_cs(&alg, &s).unwrap().verdict);
    let ideal = Subspace::coordinate(4, &[2, 3]);
    let rec = reconstruct_cotangent_data(&alg, &s, &ideal).unwrap();
    assert!(rec.round_trip_holds());
    assert!(rec.data.h().is_abelian());
    assert!(check_conditions(&rec.data).all_hold());
    let found = find_j_lagrangian_ideal(&alg, &s).unwrap();
    assert!(reconstruct_cotangent_data(&alg, &s, &found).unwrap().round_trip_holds());

    let not_lag = Subspace::coordinate(4, &[0, 2]);
    assert!(reconstruct_cotangent_data(&alg, &s, &not_lag).is_err());
}

#[test]
fn r4_minus_one_minus_one_search() {
    use crate::almost_abelian::{canonical_family_build, canonical_j0_omega0, CanonicalFParams, Family};
    let params = CanonicalFParams { family: Family::NonUnimodularPlain, inner: QMat::zeros(0, 0) };
    let alg = canonical_family_build(1, &params).unwrap().lie_algebra();
    let r4 = parse_salamon("(-14,-24,34,0)").unwrap();
    assert_eq!(invariant_fingerprint(&alg), invariant_fingerprint(&r4));
    let s = canonical_j0_omega0(1);
    assert!(verify_cs(&alg, &s).unwrap().verdict);
    if let Some(found) = find_j_lagrangian_ideal(&alg, &s) {
        assert!(is_j_lag_ideal(&alg, &s, &found));
        assert!(reconstruct_cotangent_data(&alg, &s, &found).unwrap().round_trip_holds());
    }
}
