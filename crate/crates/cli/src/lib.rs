//! Command-line driver: argument parsing, sizing checks, and report assembly.

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use preoperad_core::cohomology::associator_witness;
use preoperad_core::{
    load_algebra, run_verify, AlgebraSpec, Calculus, Cohomology, Error, Field, Suite, VerifyConfig,
    DEFAULT_MEMORY_CAP,
};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IDENTITY_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NOT_ASSOCIATIVE: i32 = 3;

/// Seeds used by the well-definedness probe.
const PROBE_SEEDS: u64 = 50;

#[derive(Parser, Debug)]
#[command(name = "preoperad", version, about = "Exact pre-operad calculus, cohomology and Gerstenhaber certification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the pre-operad axioms and every calculus identity.
    Verify(RunArgs),
    /// Compute H^0..H^N and cross-check against independent oracles.
    Cohomology(RunArgs),
    /// Certify the Gerstenhaber axioms on the computed cohomology.
    Gerstenhaber(RunArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Axioms,
    Identities,
    All,
}

#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Algebra description (JSON).
    #[arg(long)]
    pub algebra: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub max_degree: usize,
    /// Number of seeded random samples.
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Override the field: `rational` or a prime `p`.
    #[arg(long)]
    pub field: Option<String>,
    /// Largest number of coefficients any single cochain may have.
    #[arg(long, default_value_t = DEFAULT_MEMORY_CAP)]
    pub memory_cap: usize,
    /// Where to write the report; stdout if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Suites run by `verify`.
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    pub suite: SuiteArg,
    /// Skip the exhaustive sweep over basis cochains in `verify`.
    #[arg(long)]
    pub random_only: bool,
}

/// Outcome of one command: an exit status and the report document.
pub struct Run {
    pub status: i32,
    pub document: Value,
}

fn parse_field(text: &str) -> Result<Field, String> {
    if text.eq_ignore_ascii_case("rational") || text == "Q" {
        return Ok(Field::Rational);
    }
    let p: u64 = text.parse().map_err(|_| format!("field must be `rational` or a prime, got `{text}`"))?;
    Field::prime(p).map_err(|e| e.to_string())
}

fn config_value(command: &str, args: &RunArgs) -> Value {
    let suite = match args.suite {
        SuiteArg::Axioms => "axioms",
        SuiteArg::Identities => "identities",
        SuiteArg::All => "all",
    };
    json!({
        "command": command,
        "algebra": args.algebra.display().to_string(),
        "max_degree": args.max_degree,
        "samples": args.samples,
        "seed": args.seed,
        "field": args.field,
        "memory_cap": args.memory_cap,
        "suite": suite,
        "exhaustive": !args.random_only,
    })
}

fn load(args: &RunArgs) -> Result<AlgebraSpec, String> {
    let text = fs::read_to_string(&args.algebra).map_err(|e| format!("{}: {e}", args.algebra.display()))?;
    let field = args.field.as_deref().map(parse_field).transpose()?;
    load_algebra(&text, field).map_err(|e| e.to_string())
}

/// Refuses a run whose largest cochain would exceed the memory cap.
fn check_size(spec: &AlgebraSpec, degree: usize, cap: usize, what: &str) -> Result<(), String> {
    let need = spec.shape.entries(degree);
    if need > cap as u128 {
        return Err(format!(
            "{what} needs cochains of degree {degree} with {need} coefficients, above the memory cap of {cap}; \
             lower --max-degree or pass --memory-cap {need}"
        ));
    }
    Ok(())
}

fn error_doc(config: Value, kind: &str, message: &str) -> Value {
    json!({ "config": config, "error": { "kind": kind, "message": message } })
}

pub fn run(cli: &Cli) -> Run {
    let start = Instant::now();
    let (name, args) = match &cli.command {
        Command::Verify(a) => ("verify", a),
        Command::Cohomology(a) => ("cohomology", a),
        Command::Gerstenhaber(a) => ("gerstenhaber", a),
    };
    let config = config_value(name, args);
    let result = match load(args) {
        Err(msg) => Err((EXIT_CONFIG, "load", msg)),
        Ok(spec) => match name {
            "verify" => verify(&spec, args),
            _ => cohomology(&spec, args, name == "gerstenhaber"),
        },
    };
    let mut document = match &result {
        Ok((_, report)) => json!({ "config": config, "report": report }),
        Err((_, kind, msg)) => error_doc(config, kind, msg),
    };
    document["metadata"] = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "elapsed_seconds": start.elapsed().as_secs_f64(),
    });
    let status = match result {
        Ok((s, _)) => s,
        Err((s, _, _)) => s,
    };
    Run { status, document }
}

type Outcome = Result<(i32, Value), (i32, &'static str, String)>;

fn internal(e: Error) -> (i32, &'static str, String) {
    match e {
        Error::Resource { .. } => (EXIT_CONFIG, "resource", e.to_string()),
        Error::AssociativityRequired(_) => (EXIT_NOT_ASSOCIATIVE, "associativity_required", e.to_string()),
        _ => (EXIT_IDENTITY_FAILURE, "internal", e.to_string()),
    }
}

fn verify(spec: &AlgebraSpec, args: &RunArgs) -> Outcome {
    let n = args.max_degree;
    check_size(spec, (3 * n).max(n + 2), args.memory_cap, "verify").map_err(|m| (EXIT_CONFIG, "resource", m))?;
    let suites = match args.suite {
        SuiteArg::Axioms => vec![Suite::Axioms],
        SuiteArg::Identities => vec![Suite::Identities],
        SuiteArg::All => vec![Suite::Axioms, Suite::Identities],
    };
    let cfg = VerifyConfig {
        max_degree: n,
        samples: args.samples as usize,
        seed: args.seed,
        suites,
        exhaustive: !args.random_only,
        memory_cap: args.memory_cap,
    };
    let calc = Calculus::new(spec.operad().with_memory_cap(args.memory_cap), spec.mu()).map_err(internal)?;
    let report = run_verify(&calc, &spec.name, spec.shape, &cfg).map_err(internal)?;
    let status = if report.passed() { EXIT_OK } else { EXIT_IDENTITY_FAILURE };
    Ok((status, serde_json::to_value(&report).expect("report serializes")))
}

fn cohomology(spec: &AlgebraSpec, args: &RunArgs, gerstenhaber: bool) -> Outcome {
    check_size(spec, args.max_degree + 1, args.memory_cap, "cohomology").map_err(|m| (EXIT_CONFIG, "resource", m))?;
    let calc = Calculus::new(spec.operad(), spec.mu()).map_err(internal)?;
    if let Some(w) = associator_witness(spec, calc.formal_associator()) {
        return Err((EXIT_NOT_ASSOCIATIVE, "associativity_required", w));
    }
    let mut h = Cohomology::compute(spec, args.max_degree, args.memory_cap).map_err(internal)?;
    let mut report = h.report();
    let oracles = h.oracle_report().map_err(internal)?;
    let mut ok = preoperad_core::report::all_pass(&oracles.checks);
    report.oracles = Some(oracles);
    if gerstenhaber {
        let g = h.gerstenhaber_suite(PROBE_SEEDS).map_err(internal)?;
        ok &= g.passed();
        report.gerstenhaber = Some(g);
    }
    let status = if ok { EXIT_OK } else { EXIT_IDENTITY_FAILURE };
    Ok((status, serde_json::to_value(&report).expect("report serializes")))
}

/// Serializes the document with the metadata block last.
pub fn render(document: &Value) -> String {
    let mut text = serde_json::to_string_pretty(document).expect("JSON value serializes");
    text.push('\n');
    text
}

/// The document without its metadata block, for determinism comparisons.
pub fn without_metadata(document: &Value) -> Value {
    let mut d = document.clone();
    if let Some(obj) = d.as_object_mut() {
        obj.remove("metadata");
    }
    d
}
