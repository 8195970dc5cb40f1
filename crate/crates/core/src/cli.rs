//! JSON batch front end. Exit codes: 0 on success, 1 on malformed input,
//! 2 on domain errors (the JSON then carries `"error"` and a witness).

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::check;
use crate::convex_sep::{separate, ExtVec, SepError, SeparationOutcome, SeparationWeights};
use crate::extreal::{rational_to_string, ExtReal};
use crate::finspace::{FinitePoset, OpenSet, PosetJson, MAX_ELEMENTS};
use crate::functionals::{
    dominated_by_max, leq_functional_seeded, minkowski, spec_leq, Comparison, Functional,
    FunctionalError, LinFun, OpenSetRep, SublinFun,
};
use crate::interpolate::{theorem_main_witnesses, InterpolateError};
use crate::sample::DEFAULT_SEED;
use crate::valuations::{ss_recover, DualFunctionalRep, SimpleValuation, ValuationError, ValuationOnOpens};

pub const DEFAULT_MAX_SIZE: usize = 16;
pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Debug, Parser)]
#[command(name = "conedual", version, about = "Exact cone duality computations over JSON instances")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Input file (stdin when absent).
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Suite for `check`: one of the suite names or `all`.
    #[arg(long, global = true, default_value = "all")]
    pub suite: String,
    /// Largest poset accepted by `ss-recover` and `mobius`.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SIZE)]
    pub max_size: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Separate the hull of generators from the open corner.
    Sep,
    /// Convex-combination witnesses for each clause below phi.
    Interpolate,
    /// Pointwise comparison phi <= psi.
    Dominates,
    /// Minkowski functional of an open set at points.
    Minkowski,
    /// Specialization order induced by generators.
    SpecOrder,
    /// Representing function of a linear functional on valuations.
    SsRecover,
    /// Moebius inversion between point weights and open-set values.
    Mobius,
    /// Run property suites.
    Check,
}

/// Settings shared by all commands.
#[derive(Debug, Clone)]
pub struct Options {
    pub seed: u64,
    pub suite: String,
    pub max_size: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: DEFAULT_SEED,
            suite: "all".into(),
            max_size: DEFAULT_MAX_SIZE,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub json: Value,
}

impl Outcome {
    fn ok(json: Value) -> Self {
        Outcome { code: 0, json }
    }

    fn domain(json: Value) -> Self {
        Outcome { code: 2, json }
    }

    fn malformed(path: &str, message: impl Into<String>) -> Self {
        Outcome {
            code: 1,
            json: json!({"error": "malformed_input", "path": path, "message": message.into()}),
        }
    }

    /// Compact JSON followed by a newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string(&self.json).expect("json value");
        s.push('\n');
        s
    }
}

fn parse<T: DeserializeOwned>(input: &str) -> Result<T, Outcome> {
    let mut de = serde_json::Deserializer::from_str(input);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        Outcome::malformed(&path, e.into_inner().to_string())
    })?;
    de.end().map_err(|e| Outcome::malformed(".", e.to_string()))?;
    Ok(value)
}

fn weights_json(w: &SeparationWeights) -> Value {
    json!(w.as_slice().iter().map(rational_to_string).collect::<Vec<_>>())
}

fn invalid(e: impl std::fmt::Display) -> Outcome {
    Outcome::malformed(".", e.to_string())
}

/// Runs one command on the input text.
pub fn run(command: Command, input: &str, opts: &Options) -> Outcome {
    let result = match command {
        Command::Sep => run_sep(input),
        Command::Interpolate => run_interpolate(input),
        Command::Dominates => run_dominates(input, opts),
        Command::Minkowski => run_minkowski(input),
        Command::SpecOrder => run_spec_order(input),
        Command::SsRecover => run_ss_recover(input, opts),
        Command::Mobius => run_mobius(input, opts),
        Command::Check => run_check(opts),
    };
    result.unwrap_or_else(|e| e)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SepInput {
    dim: usize,
    generators: Vec<ExtVec>,
}

fn run_sep(input: &str) -> Result<Outcome, Outcome> {
    let inp: SepInput = parse(input)?;
    match separate(&inp.generators, inp.dim) {
        Ok(SeparationOutcome::Separated(w)) => Ok(Outcome::ok(json!({
            "outcome": "separated",
            "weights": weights_json(&w),
        }))),
        Ok(SeparationOutcome::MeetsV(w)) => Ok(Outcome::domain(json!({
            "error": "meets_v",
            "witness": w.iter().map(|(i, q)| json!([i, rational_to_string(q)])).collect::<Vec<_>>(),
        }))),
        Err(SepError::Lp(e)) => Err(invalid(e)),
        Err(e) => Err(invalid(e)),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InterpolateInput {
    c_gens: Vec<LinFun>,
    clauses: Vec<Vec<usize>>,
    phi: Functional,
}

fn as_sublinear(phi: Functional) -> Result<SublinFun, Outcome> {
    match phi {
        Functional::Lin { coeffs } => Ok(SublinFun::new(vec![coeffs]).expect("one branch")),
        Functional::Max { branches } => Ok(branches),
        Functional::Min { .. } => Err(Outcome::malformed("phi.kind", "expected \"lin\" or \"max\"")),
    }
}

fn run_interpolate(input: &str) -> Result<Outcome, Outcome> {
    let inp: InterpolateInput = parse(input)?;
    let phi = as_sublinear(inp.phi)?;
    match theorem_main_witnesses(&inp.clauses, &inp.c_gens, &phi) {
        Ok(ws) => Ok(Outcome::ok(json!({
            "witnesses": ws.iter().map(|w| json!({"x": w.x, "a": weights_json(&w.weights)})).collect::<Vec<_>>(),
            "certificates": ws.iter().map(|w| json!({"lambda": weights_json(&w.lambda)})).collect::<Vec<_>>(),
        }))),
        Err(InterpolateError::Clause { clause, source }) => match *source {
            InterpolateError::PreconditionViolated { witness } => Ok(Outcome::domain(json!({
                "error": "precondition_violated",
                "clause": clause,
                "witness": witness,
            }))),
            other => Err(Outcome::malformed(&format!("clauses[{clause}]"), other.to_string())),
        },
        Err(e) => Err(invalid(e)),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DominatesInput {
    phi: Functional,
    psi: Functional,
    #[serde(default)]
    samples: Option<usize>,
}

fn run_dominates(input: &str, opts: &Options) -> Result<Outcome, Outcome> {
    let inp: DominatesInput = parse(input)?;
    let budget = inp.samples.unwrap_or(DEFAULT_SAMPLES);
    let cmp = leq_functional_seeded(&inp.phi, &inp.psi, budget, opts.seed).map_err(invalid)?;
    let mut out = match cmp {
        Comparison::Holds => json!({"result": "holds", "exact": true}),
        Comparison::NotRefuted { samples } => {
            json!({"result": "not_refuted", "exact": false, "samples": samples})
        }
        Comparison::Violated { witness } => json!({"result": "violated", "exact": true, "witness": witness}),
    };
    // a linear phi below a maximum comes with simplex weights over psi's branches
    if let (Functional::Lin { coeffs }, Functional::Max { branches }) = (&inp.phi, &inp.psi) {
        match dominated_by_max(coeffs, branches) {
            Ok(Some(lambda)) => out["lambda"] = weights_json(&lambda),
            Ok(None) | Err(FunctionalError::InfiniteCoefficient) => {}
            Err(e) => return Err(invalid(e)),
        }
    }
    Ok(Outcome::ok(out))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MinkowskiInput {
    open: OpenSetRep,
    points: Vec<ExtVec>,
}

fn run_minkowski(input: &str) -> Result<Outcome, Outcome> {
    let inp: MinkowskiInput = parse(input)?;
    let mut values = Vec::new();
    let mut members = Vec::new();
    for (i, y) in inp.points.iter().enumerate() {
        let at = |e: FunctionalError| Outcome::malformed(&format!("points[{i}]"), e.to_string());
        values.push(minkowski(&inp.open, y).map_err(at)?);
        members.push(inp.open.contains(y).map_err(at)?);
    }
    Ok(Outcome::ok(json!({"values": values, "contains": members})))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecOrderInput {
    gens: Vec<LinFun>,
    y: ExtVec,
    y2: ExtVec,
}

fn run_spec_order(input: &str) -> Result<Outcome, Outcome> {
    let inp: SpecOrderInput = parse(input)?;
    let leq = spec_leq(&inp.y, &inp.y2, &inp.gens).map_err(invalid)?;
    let violated_by = inp
        .gens
        .iter()
        .position(|x| x.coeffs.dot(&inp.y) > x.coeffs.dot(&inp.y2));
    Ok(Outcome::ok(json!({"leq": leq, "violated_by": violated_by})))
}

fn build_poset(p: PosetJson, opts: &Options) -> Result<Arc<FinitePoset>, Outcome> {
    let limit = opts.max_size.min(MAX_ELEMENTS);
    if p.size > limit {
        return Err(Outcome::malformed(
            "poset.size",
            format!("{} elements exceeds the limit of {limit}", p.size),
        ));
    }
    FinitePoset::try_from(p)
        .map(Arc::new)
        .map_err(|e| Outcome::malformed("poset.leq", e.to_string()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SsRecoverInput {
    poset: PosetJson,
    coeffs: Vec<ExtReal>,
}

fn run_ss_recover(input: &str, opts: &Options) -> Result<Outcome, Outcome> {
    let inp: SsRecoverInput = parse(input)?;
    let poset = build_poset(inp.poset, opts)?;
    match ss_recover(&DualFunctionalRep::new(inp.coeffs), &poset) {
        Ok(f) => Ok(Outcome::ok(json!({"f": f.values()}))),
        Err(ValuationError::NotLsc(x, y)) => Ok(Outcome::domain(json!({
            "error": "not_lsc",
            "witness": [x, y],
        }))),
        Err(e) => Err(Outcome::malformed("coeffs", e.to_string())),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct OpenEntry {
    set: OpenSet,
    value: ExtReal,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MobiusInput {
    poset: PosetJson,
    #[serde(default)]
    weights: Option<Vec<ExtReal>>,
    #[serde(default)]
    opens: Option<Vec<OpenEntry>>,
}

fn run_mobius(input: &str, opts: &Options) -> Result<Outcome, Outcome> {
    let inp: MobiusInput = parse(input)?;
    let poset = build_poset(inp.poset, opts)?;
    match (inp.weights, inp.opens) {
        (Some(weights), None) => {
            let mu = SimpleValuation::new(poset, weights).map_err(|e| Outcome::malformed("weights", e.to_string()))?;
            let nu = mu.to_opens(opts.max_size).map_err(invalid)?;
            let opens: Vec<Value> = nu
                .table()
                .iter()
                .map(|(u, v)| json!({"set": u, "value": v}))
                .collect();
            Ok(Outcome::ok(json!({"opens": opens})))
        }
        (None, Some(entries)) => {
            let mut table = std::collections::BTreeMap::new();
            for (i, e) in entries.into_iter().enumerate() {
                if table.insert(e.set, e.value).is_some() {
                    return Err(Outcome::malformed(&format!("opens[{i}].set"), "duplicate open set"));
                }
            }
            let nu = ValuationOnOpens::new(poset, table).map_err(|e| Outcome::malformed("opens", e.to_string()))?;
            match nu.from_opens() {
                Ok(mu) => Ok(Outcome::ok(json!({"weights": mu.weights()}))),
                Err(ValuationError::UndefinedDifference(e)) => Ok(Outcome::domain(json!({
                    "error": "undefined_difference",
                    "message": e.to_string(),
                }))),
                Err(ValuationError::NotAValuation(msg)) => Ok(Outcome::domain(json!({
                    "error": "not_a_valuation",
                    "message": msg,
                }))),
                Err(e) => Err(invalid(e)),
            }
        }
        _ => Err(Outcome::malformed(".", "expected exactly one of \"weights\" or \"opens\"")),
    }
}

fn run_check(opts: &Options) -> Result<Outcome, Outcome> {
    let reports = check::run_suite(&opts.suite, opts.seed).ok_or_else(|| {
        Outcome::malformed(
            "--suite",
            format!("unknown suite; expected one of {} or all", check::SUITES.join(", ")),
        )
    })?;
    let passed = reports.iter().all(|r| r.passed());
    let body = json!({"passed": passed, "suites": reports});
    if passed {
        Ok(Outcome::ok(body))
    } else {
        let mut body = body;
        body["error"] = json!("suite_failed");
        Ok(Outcome::domain(body))
    }
}

fn read_input(path: &Option<PathBuf>) -> io::Result<String> {
    match path {
        Some(p) => fs::read_to_string(p),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

/// Parses `args`, runs the command, writes the JSON and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let opts = Options {
        seed: cli.seed,
        suite: cli.suite.clone(),
        max_size: cli.max_size,
    };
    let outcome = if cli.command == Command::Check {
        run(cli.command, "", &opts)
    } else {
        match read_input(&cli.input) {
            Ok(text) => run(cli.command, &text, &opts),
            Err(e) => Outcome::malformed("--input", e.to_string()),
        }
    };
    let rendered = outcome.render();
    let written = match &cli.output {
        Some(p) => fs::write(p, rendered),
        None => io::stdout().write_all(rendered.as_bytes()),
    };
    match written {
        Ok(()) => outcome.code,
        Err(e) => {
            eprintln!("cannot write output: {e}");
            1
        }
    }
}
