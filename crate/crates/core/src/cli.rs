//! Command-line front end.
//!
//! Exit codes: 0 success, 1 check failure or rejected request, 2 parse,
//! signature or usage error, 3 fuel exhaustion or a detected loop.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser as ClapParser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::checker::{CheckError, CheckFailure, Checker, ProofObject, Theory};
use crate::proofterm::{normalize_proof, NormalizeOutcome, DEFAULT_HISTORY_WINDOW};
use crate::rewrite::{Strategy, DEFAULT_FUEL};
use crate::selftest::{run_all, DEFAULT_SEED};
use crate::sf::{comprehend, comprehension_axiom, ComprehendError};
use crate::stratify::stratify;
use crate::syntax::parse::{parse_proofs, parse_theory, print_theory, ParseError};
use crate::syntax::{Parser, Signature};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitCode {
    Ok = 0,
    Failed = 1,
    Invalid = 2,
    Fuel = 3,
}

impl ExitCode {
    /// The code reported for a run containing both outcomes: parse errors
    /// outrank fuel, which outranks check failures.
    fn worst(self, other: ExitCode) -> ExitCode {
        let rank = |c: ExitCode| match c {
            ExitCode::Ok => 0,
            ExitCode::Failed => 1,
            ExitCode::Fuel => 2,
            ExitCode::Invalid => 3,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Output {
    #[default]
    Text,
    Sexp,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum StrategyArg {
    #[default]
    Innermost,
    Outermost,
}

/// Settings shared by every subcommand.
#[derive(Args, Clone, Debug)]
pub struct RunConfig {
    /// Step budget for each rewriting or normalization run.
    #[arg(long, global = true, default_value_t = DEFAULT_FUEL, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub fuel: usize,
    /// Enable the excluded-middle rule.
    #[arg(long, global = true)]
    pub classical: bool,
    /// Seed for the random instances generated by selftest.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    pub output: Output,
    /// Number of recent proof terms kept for loop detection.
    #[arg(long, global = true, default_value_t = DEFAULT_HISTORY_WINDOW)]
    pub history_window: usize,
}

#[derive(ClapParser, Debug)]
#[command(name = "sfmod", version, about = "Proof checker for natural deduction modulo rewriting")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the proofs in one or more proof files against a theory.
    Check { theory: PathBuf, #[arg(required = true)] proofs: Vec<PathBuf> },
    /// Normalize a proposition modulo the theory, or the proofs in a file.
    Normalize {
        theory: PathBuf,
        #[arg(long, conflicts_with = "proof_file", required_unless_present = "proof_file")]
        prop: Option<String>,
        #[arg(long)]
        proof_file: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = StrategyArg::Innermost)]
        strategy: StrategyArg,
    },
    /// Print a level map for a membership-language proposition.
    Stratify {
        #[arg(long)]
        prop: String,
    },
    /// Add a comprehension instance and write the extended theory to a new file.
    Comprehend {
        theory: PathBuf,
        #[arg(long)]
        prop: String,
        /// Space-separated variable list, set element last.
        #[arg(long)]
        vars: String,
        /// Defaults to a sibling of the input named after the new symbol.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Accept bodies mentioning earlier comprehension symbols.
        #[arg(long)]
        allow_iterated: bool,
    },
    /// Run the acceptance suite.
    Selftest,
}

struct Report {
    code: ExitCode,
    lines: Vec<String>,
}

impl Report {
    fn one(code: ExitCode, line: String) -> Self {
        Self { code, lines: vec![line] }
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn quote(s: &str) -> String {
    // keep messages readable as a single list of atoms
    s.replace(['(', ')'], "")
}

fn invalid(cfg: &RunConfig, path: Option<&Path>, err: &str) -> Report {
    let file = path.map(|p| p.display().to_string()).unwrap_or_else(|| "-".into());
    let line = match cfg.output {
        Output::Text => format!("{file}: error: {err}"),
        Output::Sexp => format!("(error (file {}) (message {}))", quote(&file), quote(err)),
    };
    Report::one(ExitCode::Invalid, line)
}

fn parse_failure(cfg: &RunConfig, path: Option<&Path>, e: &ParseError) -> Report {
    invalid(cfg, path, &e.to_string())
}

fn load_theory(cfg: &RunConfig, path: &Path) -> Result<Theory, Report> {
    let src = read(path).map_err(|e| invalid(cfg, Some(path), &e))?;
    let mut t = parse_theory(&src).map_err(|e| parse_failure(cfg, Some(path), &e))?;
    t.classical = cfg.classical;
    Ok(t)
}

/// Structured form of a check error.
pub fn error_sexp(e: &CheckError) -> String {
    match e {
        CheckError::UnboundProofVariable(a) => format!("(unbound-proof-variable {a})"),
        CheckError::HeadMismatch { expected, found } => format!("(head-mismatch (expected {expected}) (found {found}))"),
        CheckError::NotConvertible { expected, found } => format!("(not-convertible (expected {expected}) (found {found}))"),
        CheckError::ScopeViolation { var, place } => format!("(scope-violation (var {var}) (place {}))", quote(place)),
        CheckError::ClassicalRuleDisabled => "(classical-rule-disabled)".into(),
        CheckError::NotInferable(t) => format!("(not-inferable {t})"),
        CheckError::FuelExhausted(f) => format!("(fuel-exhausted (last {}) (steps {}))", f.last, f.steps),
    }
}

fn failure_line(cfg: &RunConfig, file: &Path, obj: &ProofObject, f: &CheckFailure) -> String {
    let pos = obj.locate(f);
    match cfg.output {
        Output::Text => format!("{}:{pos}: {}: FAILED at {}: {}", file.display(), obj.name, f.subterm, f.error),
        Output::Sexp => format!(
            "(proof {} (file {}) (failed (at {pos}) (path{}) (subterm {}) {}))",
            obj.name,
            quote(&file.display().to_string()),
            f.path.iter().map(|i| format!(" {i}")).collect::<String>(),
            f.subterm,
            error_sexp(&f.error)
        ),
    }
}

fn check_file(cfg: &RunConfig, theory: &Theory, path: &Path) -> Report {
    let src = match read(path) {
        Ok(s) => s,
        Err(e) => return invalid(cfg, Some(path), &e),
    };
    let objs = match parse_proofs(&src, &theory.signature) {
        Ok(o) => o,
        Err(e) => return parse_failure(cfg, Some(path), &e),
    };
    let checker = Checker::new(theory).with_fuel(cfg.fuel);
    let mut report = Report { code: ExitCode::Ok, lines: Vec::new() };
    for obj in &objs {
        match checker.check_object(obj) {
            Ok(()) => report.lines.push(match cfg.output {
                Output::Text => format!("{}: {}: ok", path.display(), obj.name),
                Output::Sexp => format!("(proof {} (file {}) ok)", obj.name, quote(&path.display().to_string())),
            }),
            Err(f) => {
                let code = if f.is_fuel() { ExitCode::Fuel } else { ExitCode::Failed };
                report.code = report.code.worst(code);
                report.lines.push(failure_line(cfg, path, obj, &f));
            }
        }
    }
    report
}

fn merge(reports: Vec<Report>) -> Report {
    let code = reports.iter().fold(ExitCode::Ok, |acc, r| acc.worst(r.code));
    Report { code, lines: reports.into_iter().flat_map(|r| r.lines).collect() }
}

fn cmd_check(cfg: &RunConfig, theory: &Path, proofs: &[PathBuf]) -> Report {
    let t = match load_theory(cfg, theory) {
        Ok(t) => t,
        Err(r) => return r,
    };
    merge(proofs.par_iter().map(|p| check_file(cfg, &t, p)).collect())
}

fn cmd_normalize(cfg: &RunConfig, theory: &Path, prop: Option<&str>, proof_file: Option<&Path>, strategy: StrategyArg) -> Report {
    let t = match load_theory(cfg, theory) {
        Ok(t) => t,
        Err(r) => return r,
    };
    if let Some(src) = prop {
        let p = match Parser::new(&t.signature).prop_str(src) {
            Ok(p) => p,
            Err(e) => return parse_failure(cfg, None, &e),
        };
        let strategy = match strategy {
            StrategyArg::Innermost => Strategy::LeftmostInnermost,
            StrategyArg::Outermost => Strategy::LeftmostOutermost,
        };
        return match t.rules.normalize_prop_with(&p, cfg.fuel, strategy) {
            Ok((nf, steps)) => Report::one(
                ExitCode::Ok,
                match cfg.output {
                    Output::Text => format!("{nf}\n{steps} steps"),
                    Output::Sexp => format!("(normal-form {nf} (steps {steps}))"),
                },
            ),
            Err(e) => Report::one(
                ExitCode::Fuel,
                match cfg.output {
                    Output::Text => format!("fuel exhausted after {} steps at {}", e.steps, e.last),
                    Output::Sexp => format!("(fuel-exhausted {} (steps {}))", e.last, e.steps),
                },
            ),
        };
    }
    let path = proof_file.expect("clap requires one of --prop and --proof-file");
    let src = match read(path) {
        Ok(s) => s,
        Err(e) => return invalid(cfg, Some(path), &e),
    };
    let objs = match parse_proofs(&src, &t.signature) {
        Ok(o) => o,
        Err(e) => return parse_failure(cfg, Some(path), &e),
    };
    let mut report = Report { code: ExitCode::Ok, lines: Vec::new() };
    for obj in objs {
        let (line, code) = match (normalize_proof(&obj.term, cfg.fuel, cfg.history_window), cfg.output) {
            (NormalizeOutcome::NormalForm { term, steps }, Output::Text) => (format!("{}: {term}\n{steps} steps", obj.name), ExitCode::Ok),
            (NormalizeOutcome::NormalForm { term, steps }, Output::Sexp) => {
                (format!("(proof {} (normal-form {term} (steps {steps})))", obj.name), ExitCode::Ok)
            }
            (NormalizeOutcome::LoopDetected { witness, steps, period }, Output::Text) => (
                format!("{}: loop detected after {steps} steps, period {period}, at {witness}", obj.name),
                ExitCode::Fuel,
            ),
            (NormalizeOutcome::LoopDetected { witness, steps, period }, Output::Sexp) => (
                format!("(proof {} (loop-detected {witness} (steps {steps}) (period {period})))", obj.name),
                ExitCode::Fuel,
            ),
            (NormalizeOutcome::FuelExhausted { last, steps }, Output::Text) => {
                (format!("{}: fuel exhausted after {steps} steps at {last}", obj.name), ExitCode::Fuel)
            }
            (NormalizeOutcome::FuelExhausted { last, steps }, Output::Sexp) => {
                (format!("(proof {} (fuel-exhausted {last} (steps {steps})))", obj.name), ExitCode::Fuel)
            }
        };
        report.code = report.code.worst(code);
        report.lines.push(line);
    }
    report
}

fn cmd_stratify(cfg: &RunConfig, prop: &str) -> Report {
    let p = match Parser::new(&Signature::membership()).prop_str(prop) {
        Ok(p) => p,
        Err(e) => return parse_failure(cfg, None, &e),
    };
    match stratify(&p) {
        Ok(v) => Report::one(ExitCode::Ok, v.to_string()),
        Err(e) => invalid(cfg, None, &e.to_string()),
    }
}

fn sibling(theory: &Path, symbol: &str) -> PathBuf {
    let stem = theory.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "theory".into());
    theory.with_file_name(format!("{stem}.{symbol}.thy"))
}

fn cmd_comprehend(cfg: &RunConfig, theory: &Path, prop: &str, vars: &str, out: Option<&Path>, allow_iterated: bool) -> Report {
    let mut t = match load_theory(cfg, theory) {
        Ok(t) => t,
        Err(r) => return r,
    };
    let body = match Parser::new(&t.signature).prop_str(prop) {
        Ok(p) => p,
        Err(e) => return parse_failure(cfg, None, &e),
    };
    let vars: Vec<String> = vars.split_whitespace().map(String::from).collect();
    let inst = match comprehend(&mut t, &body, &vars, allow_iterated) {
        Ok(i) => i,
        Err(e) => {
            let code = if matches!(e, ComprehendError::NotStratifiable(_)) { ExitCode::Failed } else { ExitCode::Invalid };
            let line = match cfg.output {
                Output::Text => format!("rejected: {e}"),
                Output::Sexp => format!("(rejected {})", quote(&e.to_string())),
            };
            return Report::one(code, line);
        }
    };
    let target = out.map(Path::to_path_buf).unwrap_or_else(|| sibling(theory, &inst.symbol));
    let same = |a: &Path, b: &Path| match (a.canonicalize(), b.canonicalize()) {
        (Ok(a), Ok(b)) => a == b,
        _ => a == b,
    };
    if same(&target, theory) {
        return invalid(cfg, Some(theory), "refusing to overwrite the input theory");
    }
    if let Err(e) = std::fs::write(&target, print_theory(&t)) {
        return invalid(cfg, Some(&target), &e.to_string());
    }
    let axiom = comprehension_axiom(&inst);
    let line = match cfg.output {
        Output::Text => format!(
            "symbol: {} (arity {})\nrule: {}\naxiom: {axiom}\nwrote {}",
            inst.symbol,
            inst.arity(),
            inst.rule,
            target.display()
        ),
        Output::Sexp => format!(
            "(comprehension (symbol {}) (arity {}) (rule {}) (axiom {axiom}) (written {}))",
            inst.symbol,
            inst.arity(),
            inst.rule,
            quote(&target.display().to_string())
        ),
    };
    Report::one(ExitCode::Ok, line)
}

fn cmd_selftest(cfg: &RunConfig) -> Report {
    let results = run_all(cfg.seed);
    let code = if results.iter().all(|r| r.passed) { ExitCode::Ok } else { ExitCode::Failed };
    let lines = results
        .iter()
        .map(|r| match cfg.output {
            Output::Text => r.to_string(),
            Output::Sexp => format!("(criterion {} {})", r.id, if r.passed { "pass" } else { "fail" }),
        })
        .collect();
    Report { code, lines }
}

/// Runs the command line `args` (program name first), writing the report to
/// `out`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { ExitCode::Invalid } else { ExitCode::Ok };
            let _ = write!(out, "{e}");
            return code as i32;
        }
    };
    let cfg = &cli.config;
    let report = match &cli.command {
        Command::Check { theory, proofs } => cmd_check(cfg, theory, proofs),
        Command::Normalize { theory, prop, proof_file, strategy } => {
            cmd_normalize(cfg, theory, prop.as_deref(), proof_file.as_deref(), *strategy)
        }
        Command::Stratify { prop } => cmd_stratify(cfg, prop),
        Command::Comprehend { theory, prop, vars, out, allow_iterated } => {
            cmd_comprehend(cfg, theory, prop, vars, out.as_deref(), *allow_iterated)
        }
        Command::Selftest => cmd_selftest(cfg),
    };
    for line in &report.lines {
        let _ = writeln!(out, "{line}");
    }
    report.code as i32
}
