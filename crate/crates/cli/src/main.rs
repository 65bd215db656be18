//! `semidualize`: ring analysis, semidualizing checks and the two-way
//! characterization harness from the command line.
//!
//! # Input
//!
//! A JSON file:
//!
//! ```text
//! {
//!   "field":   {"p": 32003},                                   optional
//!   "algebra": {"kind": "monomial_quotient",
//!               "vars": ["x", "y"], "relations": ["x^2", "x*y", "y^2"]}
//!            | {"kind": "structure_constants",
//!               "table": [[[...]]], "unit_index": 0, "labels": [...]}
//!            | {"kind": "external_tensor", "factors": [algebra, ...]},
//!   "modules": {"C": "outer(dual(regular), regular)"},          optional
//!   "ideals":  {"I1": ["x", "2*y*s + t"]}                       optional
//! }
//! ```
//!
//! `table[i][j]` lists the coordinates of `e_i e_j`. Ideal elements are
//! sums of products of basis labels, integers and `label^k`. Module
//! expressions are described in the `expr` module.
//!
//! # Reports
//!
//! With `--format json` the `theorem` command prints
//!
//! ```text
//! {"direction": "forward" | "backward" | "roundtrip",
//!  "bound": N,
//!  "inputs": {"algebra": {...}, "module_dim"?: n, "ideal_dims"?: [a, b]},
//!  "conditions": [{"id": "1", "status": "pass" | "fail" | "certified_up_to" | "unknown",
//!                  "bound"?: N, "witness"?: {"description": ..., "data"?: {...}},
//!                  "note"?: ...}, ...],
//!  "artifacts": {"dims": {...}, "betti_prefixes": {...}},
//!  "verdict": "pass" | "fail" | "inconclusive"}
//! ```
//!
//! # Exit codes
//!
//! `0` pass, `1` some check failed, `2` nothing failed but some entry is
//! unknown, `3` invalid input or a violated precondition.

mod config;
mod error;
mod expr;
mod input;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use semidual_core::algebra::AlgebraSummary;
use semidual_core::harness::{
    backward_construct, forward_check, roundtrip, ConditionReport, Status,
};
use semidual_core::resolution::bass_numbers;
use semidual_core::semidual::{classify, SemidualizingReport};
use semidual_core::FDModule;

use config::{Format, PartialConfig, SessionConfig};
use error::CliError;
use input::{build_algebra, build_ideal, BuiltAlgebra, InputFile};

#[derive(Debug, Parser)]
#[command(name = "semidualize", version, about = "Semidualizing modules over artinian local algebras")]
struct Cli {
    /// Characteristic of the base field.
    #[arg(long, global = true)]
    prime: Option<u64>,
    /// Degree bound N for Ext, Tor and Tate checks.
    #[arg(long, global = true)]
    bound: Option<usize>,
    /// Seed for randomized isomorphism searches.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Largest algebra dimension allowed anywhere in the run.
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dimension, socle, Gorenstein property, Loewy length and Bass numbers.
    RingAnalyze { input: PathBuf },
    /// Semidualizing check and classification of a module expression.
    CheckSemidualizing { input: PathBuf, module: String },
    /// Condition report for one direction of the characterization.
    Theorem {
        #[arg(value_enum)]
        direction: DirectionArg,
        input: PathBuf,
        /// Module expression for C; defaults to the `C` entry of `modules`.
        #[arg(long)]
        module: Option<String>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DirectionArg {
    Forward,
    Backward,
    Roundtrip,
}

struct Session {
    cfg: SessionConfig,
    input: InputFile,
    algebra: BuiltAlgebra,
}

impl Session {
    fn open(path: &Path, flags: &PartialConfig) -> Result<Self, CliError> {
        let env = PartialConfig::from_env()?;
        let input = InputFile::load(path)?;
        let cfg = SessionConfig::resolve(&env, input.prime(), flags)?;
        let algebra = build_algebra(&input.algebra, &cfg)?;
        Ok(Session { cfg, input, algebra })
    }

    fn module(&self, text: &str, field: &str) -> Result<FDModule, CliError> {
        let e = expr::parse(text).map_err(|m| CliError::input(field, m))?;
        let env = expr::Env {
            algebra: &self.algebra,
            modules: &self.input.modules,
            ideals: &self.input.ideals,
        };
        let m = expr::evaluate(&env, &e, field)?;
        self.cfg.check_cap(field, m.dim())?;
        Ok(m)
    }
}

#[derive(Serialize)]
struct RingReport {
    bound: usize,
    summary: AlgebraSummary,
    bass_numbers: Vec<usize>,
}

#[derive(Serialize)]
struct CheckReport {
    module: String,
    report: SemidualizingReport,
}

fn emit<T: Serialize>(cfg: &SessionConfig, value: &T, text: impl FnOnce() -> String) {
    match cfg.format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(value).expect("reports serialize")
        ),
        Format::Text => print!("{}", text()),
    }
}

fn ring_analyze(path: &Path, flags: &PartialConfig) -> Result<i32, CliError> {
    let s = Session::open(path, flags)?;
    let a = &s.algebra.algebra;
    let report = RingReport {
        bound: s.cfg.bound,
        summary: a.summary(),
        bass_numbers: bass_numbers(&FDModule::regular(a), s.cfg.bound),
    };
    emit(&s.cfg, &report, || {
        let m = &report.summary;
        format!(
            "p: {}\ndim: {}\nembedding dimension: {}\nsocle dimension: {}\ngorenstein: {}\nloewy length: {}\nhilbert function: {:?}\nbass numbers (0..={}): {:?}\n",
            m.p, m.dim, m.embedding_dim, m.socle_dim, m.gorenstein, m.loewy_length,
            m.hilbert_function, report.bound, report.bass_numbers
        )
    });
    Ok(0)
}

fn check_semidualizing(path: &Path, module: &str, flags: &PartialConfig) -> Result<i32, CliError> {
    let s = Session::open(path, flags)?;
    let m = s.module(module, "module")?;
    let report = classify(&m, s.cfg.bound).map_err(|e| CliError::core("module", e))?;
    let out = CheckReport {
        module: module.to_string(),
        report,
    };
    emit(&s.cfg, &out, || render_check(&out));
    Ok(if out.report.is_semidualizing() { 0 } else { 1 })
}

fn render_check(out: &CheckReport) -> String {
    let r = &out.report;
    let mut s = format!("module: {}\n", out.module);
    s += &format!("dim: {}\nminimal generators: {}\n", r.module_dim, r.min_generators);
    s += &format!("homothety isomorphism: {}\n", r.homothety_iso);
    s += &format!("Ext^i(C, C) for 1 <= i <= {}: {:?}\n", r.ext_checked_to, r.ext_dims);
    if let Some(f) = r.first_failure {
        s += &format!("first nonvanishing: Ext^{} has dimension {}\n", f.degree, f.dim);
    }
    if let Some(mu) = r.dagger_min_generators {
        s += &format!("generators of Hom(C, D): {mu}\n");
    }
    s += &format!("classification: {}", r.classification);
    if r.also_free {
        s += " (also free)";
    }
    s += "\n";
    if r.is_bounded() {
        s += &format!("vanishing verified up to N = {}\n", r.bound);
    }
    s
}

fn render_report(r: &ConditionReport) -> String {
    let direction = format!("{:?}", r.direction).to_lowercase();
    let mut s = format!("direction: {direction}\nbound N = {}\n", r.bound);
    for c in &r.conditions {
        let status = match c.status {
            Status::Pass => "pass".to_string(),
            Status::Fail => "FAIL".to_string(),
            Status::CertifiedUpTo => format!("certified up to N = {}", c.bound.unwrap_or(r.bound)),
            Status::Unknown => "unknown".to_string(),
        };
        s += &format!("condition ({}): {status}", c.id);
        if let Some(note) = &c.note {
            s += &format!("\n    {note}");
        }
        if let Some(w) = &c.witness {
            s += &format!("\n    witness: {}", w.description);
            for (k, v) in &w.data {
                s += &format!(" {k}={v}");
            }
        }
        s += "\n";
    }
    s += "dims:";
    for (k, v) in &r.artifacts.dims {
        s += &format!(" {k}={v}");
    }
    s += "\n";
    for (k, v) in &r.artifacts.betti_prefixes {
        s += &format!("betti {k}: {v:?}\n");
    }
    s += &format!("verdict: {:?}\n", r.verdict).to_lowercase();
    s
}

fn theorem(
    direction: DirectionArg,
    path: &Path,
    module: Option<&str>,
    flags: &PartialConfig,
) -> Result<i32, CliError> {
    let s = Session::open(path, flags)?;
    let cfg = &s.cfg;
    let alg = &s.algebra.algebra;
    let report = match direction {
        DirectionArg::Forward => {
            let ideal = |name: &str| -> Result<_, CliError> {
                let elems = s
                    .input
                    .ideals
                    .get(name)
                    .ok_or_else(|| CliError::input(format!("ideals.{name}"), "missing"))?;
                build_ideal(alg, name, elems)
            };
            let (i1, i2) = (ideal("I1")?, ideal("I2")?);
            forward_check(alg, &i1, &i2, cfg.bound)
                .map_err(|e| CliError::core("forward", e))?
                .report
        }
        DirectionArg::Backward | DirectionArg::Roundtrip => {
            let (text, field) = match module {
                Some(m) => (m.to_string(), "--module".to_string()),
                None => (
                    s.input
                        .modules
                        .get("C")
                        .cloned()
                        .ok_or_else(|| CliError::input("modules.C", "missing; pass --module"))?,
                    "modules.C".to_string(),
                ),
            };
            let c = s.module(&text, &field)?;
            cfg.check_cap("Q", 2 * (alg.dim() + c.dim()))?;
            let run = if matches!(direction, DirectionArg::Backward) {
                backward_construct(alg, &c, cfg.bound, cfg.seed).map(|o| o.report)
            } else {
                roundtrip(alg, &c, cfg.bound, cfg.seed)
            };
            run.map_err(|e| CliError::core(field, e))?
        }
    };
    emit(cfg, &report, || render_report(&report));
    Ok(report.verdict.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let flags = PartialConfig {
        prime: cli.prime,
        bound: cli.bound,
        seed: cli.seed,
        format: cli.format,
        cap: cli.cap,
    };
    let result = match &cli.command {
        Command::RingAnalyze { input } => ring_analyze(input, &flags),
        Command::CheckSemidualizing { input, module } => check_semidualizing(input, module, &flags),
        Command::Theorem {
            direction,
            input,
            module,
        } => theorem(*direction, input, module.as_deref(), &flags),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}
