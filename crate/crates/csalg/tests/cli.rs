use std::fs;
use std::process::Command;

use serde_json::Value;

use csalg::cli::{self, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};
use csalg::formats::{self, AlgebraJson, CotangentJson, StructureJson, TensorsJson};
use csalg_core::almost_abelian::canonical_j0_omega0;
use csalg_core::cotangent::fullrank_dim8;
use csalg_core::fixtures::{nonuniqueness_g1, nonuniqueness_g2};
use csalg_core::lattice::solvmanifold_f;
use csalg_core::oxidation::trivial_stage;
use csalg_core::QMat;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("csalg").chain(args.iter().copied());
    let code = cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn run_json(args: &[&str]) -> (i32, Value) {
    let (code, out, err) = run(args);
    let v = serde_json::from_str(&out).unwrap_or_else(|e| panic!("{e}: stdout={out} stderr={err}"));
    (code, v)
}

fn write_json(dir: &tempfile::TempDir, name: &str, v: &impl serde::Serialize) -> String {
    let path = dir.path().join(name);
    fs::write(&path, serde_json::to_string(v).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

fn f_json(f: &QMat) -> String {
    serde_json::to_string(&formats::matrix_to_json(f)).unwrap()
}

#[test]
fn verify_nonuniqueness_pair_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let cs = write_json(&dir, "cs.json", &StructureJson::from_structure(&canonical_j0_omega0(2)));
    for (name, aa) in [("g1.json", nonuniqueness_g1()), ("g2.json", nonuniqueness_g2())] {
        let alg = write_json(&dir, name, &AlgebraJson::from_algebra(&aa.lie_algebra()));
        let (code, v) = run_json(&["verify", "--algebra", &alg, "--structure", &cs, "--strict"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(v["verdict"], Value::Bool(true));
        assert_eq!(v["nijenhuis_witness"], Value::Null);
    }
}

#[test]
fn verify_reports_one_based_witness() {
    let cs = serde_json::to_string(&StructureJson::from_structure(&canonical_j0_omega0(1))).unwrap();
    let (code, v) = run_json(&["verify", "--algebra", "(0,0,12,13)", "--structure", &cs]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["verdict"], Value::Bool(false));
    let (strict, _) = run_json(&["verify", "--algebra", "(0,0,12,13)", "--structure", &cs, "--strict"]);
    assert_eq!(strict, EXIT_NEGATIVE);
    let w = v["nijenhuis_witness"].as_array().expect("a Nijenhuis witness");
    assert!(w.iter().all(|i| i.as_u64().unwrap() >= 1));
}

#[test]
fn classify_lattice_example_is_b_i_and_unique() {
    let f = f_json(&solvmanifold_f(2).unwrap());
    let (code, v) = run_json(&["classify", "--f", &f, "--strict"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["exists"], Value::Bool(true));
    assert_eq!(v["case"], Value::String("(b)(i)".into()));
    assert_eq!(v["unique"], Value::Bool(true));
}

#[test]
fn classify_batch_keeps_input_order() {
    let yes = formats::matrix_to_json(&solvmanifold_f(2).unwrap());
    let no = formats::matrix_to_json(&QMat::identity(3));
    let dir = tempfile::tempdir().unwrap();
    let batch = write_json(&dir, "batch.json", &vec![no.clone(), yes.clone(), no]);
    let (code, v) = run_json(&["classify", "--batch", &batch]);
    assert_eq!(code, EXIT_OK);
    let verdicts: Vec<bool> = v.as_array().unwrap().iter().map(|r| r["exists"].as_bool().unwrap()).collect();
    assert_eq!(verdicts, [false, true, false]);
    assert!(v[0]["violation"].is_string());
    let (strict, _) = run_json(&["classify", "--batch", &batch, "--strict"]);
    assert_eq!(strict, EXIT_NEGATIVE);
}

#[test]
fn build_lattice_n2_ell3() {
    let (code, v) = run_json(&["build", "lattice", "--n", "2", "--ell", "3"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["q"], serde_json::json!([-1, 4, -4, 1]));
    assert_eq!(v["distinct_roots"], Value::Bool(true));
    assert_eq!(v["Bl"].as_array().unwrap().len(), 7);
    assert!(v["t_ell"].is_string());
}

#[test]
fn lattice_big_integers_stay_exact() {
    let (code, out, _) = run(&["build", "lattice", "--n", "4", "--ell", "10"]);
    assert_eq!(code, EXIT_OK);
    let v: Value = serde_json::from_str(&out).unwrap();
    let a5 = v["a"][5].to_string();
    assert!(a5.chars().all(|c| c.is_ascii_digit() || c == '-'), "integer rendering: {a5}");
}

#[test]
fn build_semidirect_and_canonical_family() {
    let f = f_json(nonuniqueness_g1().f());
    let (code, v) = run_json(&["build", "semidirect", "--f", &f, "--strict"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["algebra"]["dim"], 8);
    let (code, v) = run_json(&[
        "build",
        "canonical-family",
        "--n",
        "3",
        "--family",
        "unimodular-even",
        "--index",
        "1",
        "--b",
        "1/2",
        "--strict",
        "--seed",
        "7",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["classification"]["exists"], Value::Bool(true));
    let (code, _, err) = run(&["build", "canonical-family", "--n", "1", "--family", "non-unimodular-jordan"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("out of range"));
}

#[test]
fn build_cotangent_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_json(&dir, "cot.json", &CotangentJson::from_data(&fullrank_dim8(true)));
    let (code, v) = run_json(&["build", "cotangent", "--input", &input, "--strict"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["conditions"]["all_hold"], Value::Bool(true));
    assert_eq!(v["algebra"]["dim"], 8);
}

#[test]
fn build_oxidation_variants() {
    let (code, v) = run_json(&["build", "oxidation", "--n", "3", "--m", "4", "--non-abelian", "--strict"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["nilpotent_step"], 4);
    assert_eq!(v["abelian_j_conditions"]["verdict"], Value::Bool(false));

    let dir = tempfile::tempdir().unwrap();
    let data = write_json(&dir, "ox.json", &v["data"]);
    let (code, w) = run_json(&["build", "oxidation", "--input", &data]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(w["algebra"], v["algebra"]);

    let stages = serde_json::json!({
        "stages": [TensorsJson::from_tensors(&trivial_stage(0)), TensorsJson::from_tensors(&trivial_stage(4))]
    });
    let stages = write_json(&dir, "stages.json", &stages);
    let (code, s) = run_json(&["build", "oxidation", "--stages", &stages, "--strict"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(s["algebra"]["dim"], 8);
    assert_eq!(s["stages"].as_array().unwrap().len(), 2);

    let (code, _, _) = run(&["build", "oxidation", "--n", "1", "--m", "2", "--non-abelian"]);
    assert_eq!(code, EXIT_INPUT);
}

#[test]
fn examples_list_and_run() {
    let (code, list) = run_json(&["examples", "list"]);
    assert_eq!(code, EXIT_OK);
    assert!(list.as_array().unwrap().iter().any(|f| f["id"] == "ex-nonuniqueness-g2"));
    let (code, v) = run_json(&["examples", "run", "ex-nonuniqueness-g2", "--strict"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["passed"], 1);
    let (code, _, err) = run(&["examples", "run", "no-such-fixture"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(err.contains("no-such-fixture"));
}

#[test]
fn fingerprint_of_salamon_input() {
    let (code, v) = run_json(&["fingerprint", "--algebra", "(0,0,12)"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(v["dim"], 3);
    assert_eq!(v["center_dim"], 1);
}

#[test]
fn malformed_input_exits_2() {
    assert_eq!(run(&["classify", "--f", "[[\"1/0\"]]"]).0, EXIT_INPUT);
    assert_eq!(run(&["verify", "--algebra", "/no/such/file", "--structure", "{}"]).0, EXIT_INPUT);
    assert_eq!(run(&["fingerprint", "--algebra", "{\"dim\":3,\"brackets\":[{\"i\":1,\"j\":1,\"k\":2,\"c\":\"1\"}]}"]).0, EXIT_INPUT);
    assert_eq!(run(&["build"]).0, EXIT_INPUT);
    assert_eq!(run(&["bogus"]).0, EXIT_INPUT);
}

#[test]
fn text_format_renders_same_data() {
    let (code, out, _) = run(&["build", "lattice", "--n", "2", "--ell", "3", "--format", "text"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("q: [-1, 4, -4, 1]"));
    assert!(out.contains("distinct_roots: true"));
}

#[test]
fn output_is_deterministic_for_a_seed() {
    let args = ["build", "canonical-family", "--n", "2", "--family", "non-unimodular-plain", "--seed", "11"];
    assert_eq!(run(&args).1, run(&args).1);
    let other = ["build", "canonical-family", "--n", "2", "--family", "non-unimodular-plain", "--seed", "12"];
    assert_ne!(run(&args).1, run(&other).1);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_csalg");
    let ok = Command::new(bin).args(["build", "lattice", "--n", "2", "--ell", "3"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let bad = Command::new(bin).args(["examples", "run", "missing"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
