//! Command-line front end. Verdict lines (`s ...`, `v ...`) go to stdout;
//! warnings, traces, statistics and logs go to stderr.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::audit::{run_campaign, write_campaign, CampaignConfig, ClauseLen};
use crate::cnf::{parse_dimacs, Assignment, Cnf, ParseError};
use crate::engine::{Decision, EngineConfig, Schedule, Variant};
use crate::extract::{extract_self_reduce, ExtractionStatus};
use crate::oracle::{self, OracleDecision};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_SOUNDNESS: i32 = 2;
pub const EXIT_SAT: i32 = 10;
pub const EXIT_UNSAT: i32 = 20;

#[derive(Debug, Parser)]
#[command(name = "gridsat", version, about = "Compatibility-matrix depletion for 3-SAT")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide a DIMACS formula with a depletion engine and extract a model.
    Solve(SolveArgs),
    /// Decide a DIMACS formula by exhaustive enumeration.
    Oracle(InputArgs),
    /// Run a seeded random campaign comparing every engine with the oracle.
    Audit(AuditArgs),
    /// Dump the matrix after the build and after every sweep.
    Trace(EngineArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// DIMACS file; stdin when omitted or "-".
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EngineArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value = "basic", value_parser = parse_variant)]
    pub variant: Variant,
    /// Triplet schedule for async (all|upper) and triangular (upper).
    #[arg(long, value_parser = parse_schedule)]
    pub schedule: Option<Schedule>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub engine: EngineArgs,
    /// Emit the matrix after every sweep on stderr.
    #[arg(long)]
    pub trace: bool,
    /// Emit run statistics as JSON on stderr.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long, default_value_t = 1000)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 5)]
    pub min_vars: u32,
    #[arg(long, default_value_t = 16)]
    pub max_vars: u32,
    #[arg(long, default_value_t = 3.0)]
    pub min_ratio: f64,
    #[arg(long, default_value_t = 5.0)]
    pub max_ratio: f64,
    /// Draw clause lengths from 1..=3 instead of fixed 3.
    #[arg(long)]
    pub mixed: bool,
    /// Append (x1) ∧ (¬x1) to every instance.
    #[arg(long)]
    pub plant_contradiction: bool,
    /// Directory for the JSON report, the CSV table and counterexamples.
    #[arg(long, default_value = "audit-out")]
    pub out: PathBuf,
    /// Also print the JSON report on stdout.
    #[arg(long)]
    pub json: bool,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    s.parse()
}

fn parse_schedule(s: &str) -> Result<Schedule, String> {
    s.parse()
}

/// Parses `args` (program name first) and runs the command against the
/// process streams.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, &mut io::stdin().lock(), &mut io::stdout().lock(), &mut io::stderr().lock()),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                EXIT_ERROR
            } else {
                EXIT_OK
            }
        }
    }
}

pub fn run(cli: Cli, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Solve(args) => cmd_solve(&args, stdin, out, err),
        Command::Oracle(args) => cmd_oracle(&args, stdin, out, err),
        Command::Audit(args) => cmd_audit(&args, out, err),
        Command::Trace(args) => cmd_trace(&args, stdin, out, err),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "c error: {e}");
        EXIT_ERROR
    })
}

type CmdResult = Result<i32, Box<dyn std::error::Error>>;

enum Input {
    Formula(Cnf),
    TriviallyUnsat,
}

fn read_input(args: &InputArgs, stdin: &mut dyn Read, err: &mut dyn Write) -> Result<Input, Box<dyn std::error::Error>> {
    let parsed = match args.input.as_deref() {
        Some(p) if p.as_os_str() != "-" => {
            let file = File::open(p).map_err(|e| format!("{}: {e}", p.display()))?;
            parse_dimacs(BufReader::new(file))
        }
        _ => parse_dimacs(BufReader::new(stdin)),
    };
    match parsed {
        Ok(parsed) => {
            for w in &parsed.warnings {
                writeln!(err, "c warning: {w}")?;
            }
            Ok(Input::Formula(parsed.cnf))
        }
        Err(e @ ParseError::EmptyClause { .. }) => {
            writeln!(err, "c {e}")?;
            Ok(Input::TriviallyUnsat)
        }
        Err(e) => Err(e.into()),
    }
}

fn engine_config(args: &EngineArgs) -> EngineConfig {
    let mut cfg = EngineConfig::new(args.variant);
    cfg.schedule = args.schedule.clone();
    cfg
}

fn model_line(a: &Assignment) -> String {
    let mut line = String::from("v");
    for lit in a.to_dimacs() {
        line.push_str(&format!(" {lit}"));
    }
    line.push_str(" 0");
    line
}

fn cmd_solve(args: &SolveArgs, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let f = match read_input(&args.engine.input, stdin, err)? {
        Input::Formula(f) => f,
        Input::TriviallyUnsat => {
            writeln!(out, "s UNSATISFIABLE")?;
            return Ok(EXIT_UNSAT);
        }
    };
    let engine = engine_config(&args.engine);
    let c = crate::compat::CompatMatrix::build(&f);
    let verdict = if args.trace {
        let mut io_result = Ok(());
        let v = engine.run_traced(c, &mut |s, m| {
            if io_result.is_ok() {
                io_result = write!(err, "sweep {s}\n{}", m.serialize());
            }
        })?;
        io_result?;
        v
    } else {
        engine.run(c)?
    };
    if args.json {
        writeln!(err, "{}", verdict.stats_json())?;
    }
    if verdict.decision == Decision::Unsat {
        writeln!(out, "s UNSATISFIABLE")?;
        return Ok(EXIT_UNSAT);
    }
    let outcome = extract_self_reduce(&f, &engine)?;
    match (outcome.status, &outcome.model) {
        (ExtractionStatus::Model, Some(model)) => {
            writeln!(out, "s SATISFIABLE")?;
            writeln!(out, "{}", model_line(model))?;
            Ok(EXIT_SAT)
        }
        _ => {
            writeln!(out, "s UNKNOWN")?;
            writeln!(err, "{}", outcome.branch_log_json())?;
            Ok(EXIT_OK)
        }
    }
}

fn cmd_oracle(args: &InputArgs, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let f = match read_input(args, stdin, err)? {
        Input::Formula(f) => f,
        Input::TriviallyUnsat => {
            writeln!(out, "s UNSATISFIABLE")?;
            return Ok(EXIT_UNSAT);
        }
    };
    let result = oracle::brute_force(&f, false)?;
    match result.decision {
        OracleDecision::Sat => {
            writeln!(out, "s SATISFIABLE")?;
            writeln!(out, "{}", model_line(&result.models[0]))?;
            Ok(EXIT_SAT)
        }
        OracleDecision::Unsat => {
            writeln!(out, "s UNSATISFIABLE")?;
            Ok(EXIT_UNSAT)
        }
    }
}

fn cmd_trace(args: &EngineArgs, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let f = match read_input(&args.input, stdin, err)? {
        Input::Formula(f) => f,
        Input::TriviallyUnsat => return Ok(EXIT_UNSAT),
    };
    let mut io_result = Ok(());
    let verdict = engine_config(args).run_traced(crate::compat::CompatMatrix::build(&f), &mut |s, m| {
        if io_result.is_ok() {
            io_result = write!(out, "sweep {s}\n{}", m.serialize());
        }
    })?;
    io_result?;
    writeln!(err, "{}", verdict.stats_json())?;
    Ok(EXIT_OK)
}

fn cmd_audit(args: &AuditArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let cfg = CampaignConfig {
        count: args.count,
        master_seed: args.seed,
        min_vars: args.min_vars,
        max_vars: args.max_vars,
        min_ratio: args.min_ratio,
        max_ratio: args.max_ratio,
        clause_len: if args.mixed { ClauseLen::Mixed } else { ClauseLen::Fixed(3) },
        plant_contradiction: args.plant_contradiction,
    };
    let campaign = run_campaign(&cfg)?;
    let written = write_campaign(&args.out, &campaign)?;
    let report = &campaign.report;
    for (variant, counts) in &report.per_variant {
        writeln!(
            err,
            "c {variant:>10}: both_sat {} both_unsat {} engine_sat/oracle_unsat {} engine_unsat/oracle_sat {}",
            counts.both_sat, counts.both_unsat, counts.engine_sat_oracle_unsat, counts.engine_unsat_oracle_sat
        )?;
    }
    writeln!(
        err,
        "c sweeps (basic): min {:?} median {:?} max {:?}",
        report.iterations.min, report.iterations.median, report.iterations.max
    )?;
    writeln!(err, "c counterexamples: {}", report.counterexamples.len())?;
    for path in written {
        writeln!(err, "c wrote {}", path.display())?;
    }
    if args.json {
        writeln!(out, "{}", report.to_json())?;
    }
    if report.soundness.ok {
        Ok(EXIT_OK)
    } else {
        writeln!(err, "c SOUNDNESS VIOLATION: {:?}", report.soundness)?;
        Ok(EXIT_SOUNDNESS)
    }
}
