//! Command-line interface: gradations, classification sweeps, and the full
//! verification suite, with optional machine-readable reports.
//!
//! Exit codes: 0 success, 1 verification/invariant failure, 2 usage error.

use clap::{Args, Parser, Subcommand};
use liegrade::classify::{sweep, Verdict};
use liegrade::report::{csv_row, GradationSpec, Report, CSV_HEADER};
use liegrade::verify::{cross_validate_records, grade_result, run_all, GradeCmdError, VerifyOptions};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "liegrade",
    version,
    about = "Exact gradations, Tanaka prolongations and classification of classical simple Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Grade (X_l, Δ₁): dimensions per degree, depth, optional diagram.
    Grade(GradeArgs),
    /// Sweep all gradations up to a rank and classify each one.
    Classify(ClassifyArgs),
    /// Run the complete verification suite.
    VerifyAll(VerifyArgs),
}

#[derive(Args)]
struct GradeArgs {
    /// Lie type: A, B, C or D.
    lie_type: String,
    /// Rank l.
    rank: usize,
    /// Marked simple roots, comma-separated (e.g. `1,3`).
    delta1: String,
    /// Render the block degree diagram (types A and C).
    #[arg(long)]
    diagram: bool,
    /// Emit a JSON report.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Largest rank to sweep (hard cap 6).
    #[arg(long, default_value_t = 5)]
    max_rank: usize,
    /// Emit a JSON report.
    #[arg(long)]
    json: bool,
    /// Emit CSV rows.
    #[arg(long)]
    csv: bool,
    /// Cross-validate every verdict against the prolongation tower.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest rank the criteria sweep (hard cap 6).
    #[arg(long, default_value_t = 5)]
    max_rank: usize,
    /// Prolongation degree cap override (default: depth + 2).
    #[arg(long)]
    cap: Option<i64>,
}

const USAGE: u8 = 2;
const FAILURE: u8 = 1;

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(USAGE)
}

fn run_grade(args: &GradeArgs) -> ExitCode {
    let start = Instant::now();
    let spec_str = format!("{} {} {}", args.lie_type, args.rank, args.delta1);
    let spec: GradationSpec = match spec_str.parse() {
        Ok(s) => s,
        Err(e) => return usage_error(&e.to_string()),
    };
    let delta = match spec.marked_set() {
        Ok(d) => d,
        Err(e) => return usage_error(&e.to_string()),
    };
    match grade_result(spec.lie_type, spec.rank, &delta, args.diagram) {
        Ok(results) => {
            if args.json {
                let mut report = Report::new("grade")
                    .input("type", spec.lie_type)
                    .input("rank", spec.rank)
                    .input("delta1", &args.delta1);
                report.results = results;
                report.timing_ms = start.elapsed().as_millis() as u64;
                println!("{}", report.to_json());
            } else {
                let dims = results["dims"].as_object().expect("dims present");
                println!(
                    "({}_{}, {{{}}}): depth {}",
                    spec.lie_type, spec.rank, delta, results["depth"]
                );
                let mut keys: Vec<i64> = dims
                    .keys()
                    .map(|k| k.parse().expect("integer key"))
                    .collect();
                keys.sort_unstable();
                for k in keys {
                    println!("  g_{k:<3} dim {}", dims[&k.to_string()]);
                }
                println!("  m ⊕ p = g: {}", results["bruhat_open_orbit"]);
                if let Some(d) = results.get("diagram").and_then(|v| v.as_str()) {
                    print!("{d}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(GradeCmdError::Usage(e)) => usage_error(&e),
        Err(GradeCmdError::Invariant(e)) => {
            eprintln!("invariant failure: {e}");
            ExitCode::from(FAILURE)
        }
    }
}

fn run_classify(args: &ClassifyArgs) -> ExitCode {
    if args.max_rank > 6 || args.max_rank == 0 {
        return usage_error("--max-rank must be between 1 and 6");
    }
    let start = Instant::now();
    let records = sweep(args.max_rank);
    // Cross-validation results per record, when requested; computed in
    // parallel, reported in sweep order.
    let mut verified: Vec<Option<bool>> = vec![None; records.len()];
    if args.verify {
        match cross_validate_records(&records) {
            Ok(flags) => {
                for (slot, ok) in verified.iter_mut().zip(flags) {
                    *slot = Some(ok);
                }
            }
            Err(e) => {
                eprintln!("{e}");
                return ExitCode::from(FAILURE);
            }
        }
    }

    if args.csv {
        println!("{CSV_HEADER}");
        for r in &records {
            println!("{}", csv_row(r));
        }
    } else if args.json {
        let mut report = Report::new("classify")
            .input("max_rank", args.max_rank)
            .input("verify", args.verify);
        let rows: Vec<serde_json::Value> = records
            .iter()
            .zip(&verified)
            .map(|(r, v)| {
                let mut val = serde_json::to_value(r).expect("record serializes");
                if let Some(ok) = v {
                    val["prolongation_dims_match"] = serde_json::json!(ok);
                }
                val
            })
            .collect();
        report.results = serde_json::Value::Array(rows);
        report.timing_ms = start.elapsed().as_millis() as u64;
        println!("{}", report.to_json());
    } else {
        for (r, v) in records.iter().zip(&verified) {
            let delta: Vec<String> = r.delta1.iter().map(|i| i.to_string()).collect();
            let mut line = format!(
                "{}{} {{{}}}: depth {} type {}",
                r.lie_type,
                r.rank,
                delta.join(","),
                r.depth,
                r.verdict
            );
            if r.contact {
                line.push_str(" contact");
            }
            if let Some(a) = &r.exceptional_aut {
                let d: Vec<String> = a.delta1.iter().map(|i| i.to_string()).collect();
                line.push_str(&format!(
                    " Aut0->({}{}, {{{}}})",
                    a.lie_type,
                    a.rank,
                    d.join(",")
                ));
            }
            if let Some(vm) = &r.vmrt {
                line.push_str(&format!(" VMRT {} dim {}", vm.model, vm.dim));
            }
            if let Some(ok) = v {
                let tag = match (r.verdict == Verdict::TypeI, ok) {
                    (true, true) => " [prolongation dims match]",
                    (true, false) => " [prolongation dims MISMATCH]",
                    (false, true) => " [tower excess verified]",
                    (false, false) => " [tower excess MISSING]",
                };
                line.push_str(tag);
            }
            println!("{line}");
        }
    }
    if args.verify && verified.iter().flatten().any(|ok| !ok) {
        eprintln!("prolongation cross-validation failed");
        return ExitCode::from(FAILURE);
    }
    ExitCode::SUCCESS
}

fn run_verify_all(args: &VerifyArgs) -> ExitCode {
    if args.max_rank > 6 || args.max_rank == 0 {
        return usage_error("--max-rank must be between 1 and 6");
    }
    let opts = VerifyOptions {
        max_rank: args.max_rank,
        cap: args.cap,
    };
    let results = run_all(&opts);
    for r in &results {
        println!("{}", r.line());
    }
    if let Some(first) = results.iter().find(|r| !r.passed) {
        eprintln!("first failing criterion: {} ({})", first.id, first.name);
        return ExitCode::from(FAILURE);
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    // Die quietly on closed pipes instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match &cli.command {
        Command::Grade(args) => run_grade(args),
        Command::Classify(args) => run_classify(args),
        Command::VerifyAll(args) => run_verify_all(args),
    }
}
