//! The `csalg` command line.
//!
//! Every command prints one JSON document (or its text rendering). Exit code
//! 0 means a report was produced, 1 a negative verdict under `--strict`, and
//! 2 an input or usage error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use csalg_core::almost_abelian::{
    build_semidirect, canonical_family_build, canonical_j0_omega0, classify_existence, inner_size,
    sample::random_sp_complex, uniqueness_hint, CanonicalFParams, Existence, Family, Uniqueness,
};
use csalg_core::cotangent::{build_cotangent, check_conditions};
use csalg_core::csgeom::verify_cs;
use csalg_core::fixtures;
use csalg_core::lattice::lattice_report;
use csalg_core::lie::{invariant_fingerprint, parse_salamon, LieAlgebra};
use csalg_core::oxidation::{
    abelian_j_conditions, build_oxidation, iterate_oxidation, steplength_generator, validate_oxidation,
    OxidationData,
};
use csalg_core::rat::parse_rat;
use csalg_core::QMat;

use crate::formats::{self, AlgebraJson, CotangentJson, Matrix, OxidationJson, StagesJson, StructureJson};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

/// Entry bound for randomly drawn `sp` blocks.
const RANDOM_ENTRY_BOUND: i64 = 3;

#[derive(Debug, Parser)]
#[command(name = "csalg", version, about = "Complex symplectic structures on real Lie algebras")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Seed for every randomized choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Exit with status 1 when the computed verdict is negative.
    #[arg(long, global = true)]
    pub strict: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that (J, Ω) is a complex symplectic structure on an algebra.
    Verify {
        /// Algebra file, inline JSON, or inline Salamon notation.
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        structure: String,
    },
    /// Decide whether R^{4n-1} ⋊_f R admits a complex symplectic structure.
    Classify {
        #[arg(long, conflicts_with = "batch", required_unless_present = "batch")]
        f: Option<String>,
        /// JSON array of f matrices, classified concurrently.
        #[arg(long)]
        batch: Option<String>,
    },
    #[command(subcommand)]
    Build(Build),
    #[command(subcommand)]
    Examples(Examples),
    /// Isomorphism invariants of an algebra.
    Fingerprint {
        #[arg(long)]
        algebra: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum Build {
    /// R^{4n-1} ⋊_f R with the canonical (J0, Ω0).
    Semidirect {
        #[arg(long)]
        f: String,
    },
    /// The cotangent extension of (h, J, ρ, α).
    Cotangent {
        #[arg(long)]
        input: String,
    },
    /// One oxidation, an iterated chain, or a step-length example.
    Oxidation(OxidationArgs),
    /// A member of one of the five canonical families.
    CanonicalFamily(FamilyArgs),
    /// The integer data behind the lattice family.
    Lattice {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        ell: i64,
    },
}

#[derive(Debug, Args)]
pub struct OxidationArgs {
    #[arg(long, conflicts_with_all = ["stages", "n"])]
    pub input: Option<String>,
    #[arg(long, conflicts_with = "n")]
    pub stages: Option<String>,
    #[arg(long, requires = "m")]
    pub n: Option<usize>,
    /// Nilpotency step of the generated example.
    #[arg(long, requires = "n")]
    pub m: Option<usize>,
    #[arg(long, requires = "n")]
    pub non_abelian: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    /// diag(A, 1, 1, -1).
    NonUnimodularPlain,
    /// diag(A, 0) with b, c.
    UnimodularPlain,
    /// Coupled J̃_p(-1) block; needs --index p.
    NonUnimodularJordan,
    /// Coupled J̃_{2r-1}; needs --index r.
    UnimodularOdd,
    /// Coupled J̃_{2s}; needs --index s.
    UnimodularEven,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub family: FamilyKind,
    /// The family's p, r or s.
    #[arg(long, default_value_t = 1)]
    pub index: usize,
    #[arg(long, default_value = "0")]
    pub b: String,
    #[arg(long, default_value = "0")]
    pub c: String,
    /// The free sp block; drawn from --seed when absent.
    #[arg(long)]
    pub inner: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Examples {
    /// List fixture ids.
    List,
    /// Run one fixture, or all of them.
    Run { id: Option<String> },
}

/// A failure that maps to exit code 2.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Format(#[from] formats::FormatError),
    #[error("{0}")]
    Domain(String),
}

fn domain(e: impl std::fmt::Display) -> InputError {
    InputError::Domain(e.to_string())
}

/// A report and whether its verdict is positive.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub report: Value,
    pub positive: bool,
}

impl Outcome {
    fn new(report: Value, positive: bool) -> Self {
        Outcome { report, positive }
    }
}

/// Inline values start with `(` (Salamon), `{` or `[` (JSON); anything else
/// is a path.
fn load(arg: &str) -> Result<String, InputError> {
    let t = arg.trim_start();
    if t.starts_with(['(', '{', '[']) {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(Path::new(arg)).map_err(|source| InputError::Io { path: arg.to_string(), source })
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Format(e.into()))
}

pub fn load_algebra(arg: &str) -> Result<LieAlgebra, InputError> {
    let text = load(arg)?;
    if text.trim_start().starts_with('(') {
        return parse_salamon(&text).map_err(domain);
    }
    Ok(parse_json::<AlgebraJson>(&text)?.to_algebra()?)
}

fn load_matrix(arg: &str) -> Result<QMat, InputError> {
    Ok(formats::matrix_from_json(&parse_json::<Matrix>(&load(arg)?)?)?)
}

fn verify_value(alg: &LieAlgebra, s: &csalg_core::csgeom::CSStructure) -> Result<(Value, bool), InputError> {
    let r = verify_cs(alg, s).map_err(domain)?;
    Ok((formats::verify_report_json(&r), r.verdict))
}

pub fn classify_value(f: &QMat) -> Value {
    match classify_existence(f) {
        Existence::Yes(case) => {
            let unique = match uniqueness_hint(f) {
                Ok(Uniqueness::UniqueUpToEquivalence) => Value::Bool(true),
                _ => Value::Null,
            };
            json!({ "exists": true, "case": case.label(), "unique": unique, "violation": null })
        }
        Existence::No(v) => json!({ "exists": false, "case": null, "unique": null, "violation": v.to_string() }),
    }
}

fn exists(v: &Value) -> bool {
    v["exists"] == Value::Bool(true)
}

fn classify_batch(text: &str) -> Result<Outcome, InputError> {
    let inputs: Vec<Matrix> = parse_json(text)?;
    let matrices = inputs
        .iter()
        .map(|m| formats::matrix_from_json(m).map_err(InputError::from))
        .collect::<Result<Vec<_>, _>>()?;
    let reports: Vec<Value> = std::thread::scope(|scope| {
        let handles: Vec<_> = matrices.iter().map(|f| scope.spawn(move || classify_value(f))).collect();
        handles.into_iter().map(|h| h.join().expect("classification does not panic")).collect()
    });
    let positive = reports.iter().all(exists);
    Ok(Outcome::new(Value::Array(reports), positive))
}

fn built(alg: &LieAlgebra, s: &csalg_core::csgeom::CSStructure) -> Result<(Value, bool), InputError> {
    let (verify, ok) = verify_value(alg, s)?;
    let report = json!({
        "algebra": formats::algebra_value(alg),
        "structure": formats::structure_value(s),
        "verify": verify,
    });
    Ok((report, ok))
}

fn merge(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn oxidation_single(d: &OxidationData) -> Result<Outcome, InputError> {
    let report = validate_oxidation(d).map_err(domain)?;
    let conditions = abelian_j_conditions(d);
    let extra = json!({
        "validation": formats::oxidation_report_json(&report),
        "abelian_j_conditions": formats::abelian_conditions_json(&conditions),
    });
    if !report.verdict {
        return Ok(Outcome::new(extra, false));
    }
    let (alg, s) = build_oxidation(d).map_err(domain)?;
    let (value, ok) = built(&alg, &s)?;
    let lcs = alg.lower_central_series();
    let extra = merge(extra, json!({ "nilpotent_step": lcs.step }));
    Ok(Outcome::new(merge(value, extra), ok))
}

fn build_oxidation_cmd(a: &OxidationArgs) -> Result<Outcome, InputError> {
    if let Some(input) = &a.input {
        let d = parse_json::<OxidationJson>(&load(input)?)?.to_data()?;
        return oxidation_single(&d);
    }
    if let Some(stages) = &a.stages {
        let stages = parse_json::<StagesJson>(&load(stages)?)?.to_stages()?;
        let it = iterate_oxidation(&stages).map_err(domain)?;
        let (value, ok) = built(&it.algebra, &it.structure)?;
        let stage_values: Vec<Value> = it
            .stages
            .iter()
            .map(|s| {
                json!({
                    "valid": s.valid,
                    "abelian_conditions": s.abelian_conditions,
                    "abelian_j": s.abelian_j,
                    "center_j_invariant": s.center_j_invariant,
                })
            })
            .collect();
        let all_valid = it.all_valid();
        let extra = json!({ "stages": stage_values, "predicted_abelian": it.predicted_abelian() });
        return Ok(Outcome::new(merge(value, extra), ok && all_valid));
    }
    match (a.n, a.m) {
        (Some(n), Some(m)) => {
            let d = steplength_generator(n, m, !a.non_abelian).map_err(domain)?;
            let mut out = oxidation_single(&d)?;
            out.report = merge(out.report, json!({ "data": OxidationJson::from_data(&d) }));
            Ok(out)
        }
        _ => Err(InputError::Domain("build oxidation needs --input, --stages, or --n with --m".into())),
    }
}

fn build_family(a: &FamilyArgs, seed: u64) -> Result<Outcome, InputError> {
    let b = parse_rat(&a.b).map_err(domain)?;
    let c = parse_rat(&a.c).map_err(domain)?;
    let family = match a.family {
        FamilyKind::NonUnimodularPlain => Family::NonUnimodularPlain,
        FamilyKind::UnimodularPlain => Family::UnimodularPlain { b, c },
        FamilyKind::NonUnimodularJordan => Family::NonUnimodularJordan { p: a.index },
        FamilyKind::UnimodularOdd => Family::UnimodularOdd { r: a.index, b, c },
        FamilyKind::UnimodularEven => Family::UnimodularEven { s: a.index, b, c },
    };
    let size = inner_size(a.n, &family).map_err(domain)?;
    let inner = match &a.inner {
        Some(arg) => load_matrix(arg)?,
        None if size == 0 => QMat::zeros(0, 0),
        None => random_sp_complex(size / 4, &mut ChaCha8Rng::seed_from_u64(seed), RANDOM_ENTRY_BOUND),
    };
    let aa = canonical_family_build(a.n, &CanonicalFParams { family, inner }).map_err(domain)?;
    let alg = aa.lie_algebra();
    let (value, ok) = built(&alg, &canonical_j0_omega0(a.n))?;
    let classification = classify_value(aa.f());
    let positive = ok && exists(&classification);
    let extra = json!({ "f": formats::matrix_to_json(aa.f()), "classification": classification });
    Ok(Outcome::new(merge(value, extra), positive))
}

fn run_examples(id: Option<&str>) -> Result<Outcome, InputError> {
    let selected = match id {
        Some(id) => vec![fixtures::find(id).ok_or_else(|| InputError::Domain(format!("unknown example id `{id}`")))?],
        None => fixtures::catalog(),
    };
    let results: Vec<Value> = selected
        .iter()
        .map(|fx| {
            let r = fx.run();
            json!({
                "id": fx.id,
                "summary": fx.summary,
                "pass": r.is_ok(),
                "error": r.err(),
            })
        })
        .collect();
    let passed = results.iter().filter(|r| r["pass"] == Value::Bool(true)).count();
    let total = results.len();
    let report = json!({ "results": results, "passed": passed, "total": total });
    Ok(Outcome::new(report, passed == total))
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome, InputError> {
    match &cli.command {
        Command::Verify { algebra, structure } => {
            let alg = load_algebra(algebra)?;
            let s = parse_json::<StructureJson>(&load(structure)?)?.to_structure()?;
            let (report, ok) = verify_value(&alg, &s)?;
            Ok(Outcome::new(report, ok))
        }
        Command::Classify { f: Some(f), .. } => {
            let report = classify_value(&load_matrix(f)?);
            let ok = exists(&report);
            Ok(Outcome::new(report, ok))
        }
        Command::Classify { batch: Some(batch), .. } => classify_batch(&load(batch)?),
        Command::Classify { .. } => Err(InputError::Domain("classify needs --f or --batch".into())),
        Command::Build(Build::Semidirect { f }) => {
            let f = load_matrix(f)?;
            let alg = build_semidirect(&f).map_err(domain)?;
            let (report, ok) = built(&alg, &canonical_j0_omega0(alg.dim() / 4))?;
            Ok(Outcome::new(report, ok))
        }
        Command::Build(Build::Cotangent { input }) => {
            let d = parse_json::<CotangentJson>(&load(input)?)?.to_data()?;
            let conditions = check_conditions(&d);
            let extra = json!({ "conditions": formats::conditions_json(&conditions) });
            if !conditions.all_hold() {
                return Ok(Outcome::new(extra, false));
            }
            let (alg, s) = build_cotangent(&d);
            let (value, ok) = built(&alg, &s)?;
            Ok(Outcome::new(merge(value, extra), ok))
        }
        Command::Build(Build::Oxidation(a)) => build_oxidation_cmd(a),
        Command::Build(Build::CanonicalFamily(a)) => build_family(a, cli.seed),
        Command::Build(Build::Lattice { n, ell }) => {
            let r = lattice_report(*n, *ell).map_err(domain)?;
            Ok(Outcome::new(formats::lattice_report_json(&r), r.all_hold()))
        }
        Command::Examples(Examples::List) => {
            let list: Vec<Value> =
                fixtures::catalog().iter().map(|f| json!({ "id": f.id, "summary": f.summary })).collect();
            Ok(Outcome::new(Value::Array(list), true))
        }
        Command::Examples(Examples::Run { id }) => run_examples(id.as_deref()),
        Command::Fingerprint { algebra } => {
            let alg = load_algebra(algebra)?;
            Ok(Outcome::new(formats::fingerprint_json(&invariant_fingerprint(&alg)), true))
        }
    }
}

/// Indented `key: value` rendering of a JSON value.
pub fn render_text(v: &Value) -> String {
    fn scalar(v: &Value) -> Option<String> {
        match v {
            Value::Null => Some("-".into()),
            Value::Bool(b) => Some(b.to_string()),
            Value::Number(n) => Some(n.to_string()),
            Value::String(s) => Some(s.clone()),
            Value::Array(a) if a.iter().all(|x| scalar(x).is_some() && !x.is_array()) => {
                Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
            }
            _ => None,
        }
    }
    fn go(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    match scalar(x) {
                        Some(s) => {
                            let _ = writeln!(out, "{pad}{k}: {s}");
                        }
                        None => {
                            let _ = writeln!(out, "{pad}{k}:");
                            go(x, indent + 1, out);
                        }
                    }
                }
            }
            Value::Array(items) => {
                for x in items {
                    match scalar(x) {
                        Some(s) => {
                            let _ = writeln!(out, "{pad}- {s}");
                        }
                        None => {
                            let _ = writeln!(out, "{pad}-");
                            go(x, indent + 1, out);
                        }
                    }
                }
            }
            other => {
                let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
            }
        }
    }
    let mut out = String::new();
    go(v, 0, &mut out);
    out
}

/// Parses `args` (including the program name), runs the command and writes
/// the report to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(&cli) {
        Ok(outcome) => {
            let text = match cli.format {
                OutputFormat::Json => {
                    serde_json::to_string_pretty(&outcome.report).expect("JSON values serialize") + "\n"
                }
                OutputFormat::Text => render_text(&outcome.report),
            };
            let _ = out.write_all(text.as_bytes());
            if cli.strict && !outcome.positive {
                EXIT_NEGATIVE
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}
