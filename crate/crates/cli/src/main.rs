//! Batch front end for the superspecial H_{a,b} enumeration.
//!
//! Exit codes: 0 success, 1 discrepancies or computation failures,
//! 2 argument errors.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use habenum::cartier::{cm_matrix_generic, family_poly};
use habenum::classify::is_a4;
use habenum::search::{
    check_against_fixture, enumerate_range, EnumerationReport, SearchConfig,
};
use habenum::solver::{brute_force_solutions, filter_nonsingular, solve_cm_zero};
use habenum::{FieldCtx, Fp2Element};

const SEED_ENV: &str = "HABENUM_SEED";
const WORKERS_ENV: &str = "HABENUM_WORKERS";

#[derive(Parser)]
#[command(
    name = "habenum",
    about = "Enumerate superspecial genus-4 hyperelliptic curves y^2 = x^10 + x^7 + a*x^4 + b*x over GF(p^2)",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct RunArgs {
    /// Seed for the randomized subroutines (env HABENUM_SEED when omitted)
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (env HABENUM_WORKERS when omitted; 0 = all cores)
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate all primes in [min, max] and report per-prime results
    Enumerate {
        #[arg(long)]
        min: u64,
        #[arg(long)]
        max: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Write to this file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Brute-force scan of GF(p^2)^2 and comparison with the solver
    Oracle {
        #[arg(long)]
        p: u64,
        /// Largest p the scan accepts
        #[arg(long, default_value_t = habenum::DEFAULT_ORACLE_BOUND)]
        oracle_bound: u64,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Inspect a single curve of the family
    Curve {
        #[arg(long)]
        p: u64,
        /// Curve parameter a, as "c0+c1*t" or a bare integer
        #[arg(long)]
        a: String,
        /// Curve parameter b, same encoding
        #[arg(long)]
        b: String,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Enumerate [min, max] and compare against the published tables
    Check {
        #[arg(long)]
        min: u64,
        #[arg(long)]
        max: u64,
        #[command(flatten)]
        run: RunArgs,
    },
}

fn seed_from(run: &RunArgs) -> Result<u64, String> {
    if let Some(s) = run.seed {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .parse::<u64>()
            .map_err(|_| format!("{SEED_ENV} must be an unsigned integer, got {v:?}")),
        Err(_) => Ok(habenum::DEFAULT_SEED),
    }
}

fn workers_from(run: &RunArgs) -> Result<Option<usize>, String> {
    if let Some(w) = run.workers {
        return Ok(Some(w));
    }
    match std::env::var(WORKERS_ENV) {
        Ok(v) => v
            .parse::<usize>()
            .map(Some)
            .map_err(|_| format!("{WORKERS_ENV} must be an unsigned integer, got {v:?}")),
        Err(_) => Ok(None),
    }
}

/// Run `body` inside a rayon pool of the requested size; without the
/// parallel feature the worker count is ignored.
fn with_workers<T: Send>(workers: Option<usize>, body: impl FnOnce() -> T + Send) -> T {
    #[cfg(feature = "parallel")]
    {
        match workers {
            Some(n) if n > 0 => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .expect("thread pool")
                .install(body),
            _ => body(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = workers;
        body()
    }
}

fn timing_cell(v: Option<u64>) -> String {
    v.map(|ms| ms.to_string()).unwrap_or_default()
}

fn render_csv(reports: &[EnumerationReport]) -> String {
    let mut out = String::from(
        "p,p_mod_3,num_classes,gcd_degree,t_step1_ms,t_step2_ms,t_step3_ms,t_total_ms\n",
    );
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.p,
            r.p_mod_3,
            r.num_classes,
            r.gcd_degree,
            r.t_step1_ms,
            r.t_step2_ms,
            timing_cell(r.t_step3_ms),
            r.t_total_ms
        ));
    }
    out
}

fn emit(text: &str, out: &Option<PathBuf>) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn cmd_enumerate(
    min: u64,
    max: u64,
    format: Format,
    out: Option<PathBuf>,
    seed: u64,
) -> anyhow::Result<ExitCode> {
    let config = SearchConfig {
        seed,
        ..SearchConfig::default()
    };
    let reports = enumerate_range(min, max, &config)?;
    let text = match format {
        Format::Csv => render_csv(&reports),
        Format::Json => serde_json::to_string_pretty(&reports)? + "\n",
    };
    emit(&text, &out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(p: u64, oracle_bound: u64, seed: u64) -> anyhow::Result<ExitCode> {
    let ctx = FieldCtx::new(p)?;
    let brute = brute_force_solutions(&ctx, oracle_bound)?;
    println!("brute force: {} superspecial pair(s)", brute.pairs.len());
    for &(a, b) in &brute.pairs {
        println!("  a={} b={}", a.encode(), b.encode());
    }
    let matrix = habenum::cartier::parametric_cm(&ctx)?;
    let solved = solve_cm_zero(&matrix, &ctx, seed)?;
    let survivors = filter_nonsingular(&solved, &ctx);
    if survivors == brute.pairs {
        println!("agreement: solver and brute force found the same set");
        Ok(ExitCode::SUCCESS)
    } else {
        println!(
            "DISAGREEMENT: solver found {} pair(s), brute force {}",
            survivors.len(),
            brute.pairs.len()
        );
        for &(a, b) in &survivors {
            println!("  solver: a={} b={}", a.encode(), b.encode());
        }
        Ok(ExitCode::FAILURE)
    }
}

fn cmd_curve(p: u64, a: &str, b: &str, seed: u64) -> anyhow::Result<ExitCode> {
    let ctx = FieldCtx::new(p)?;
    let a: Fp2Element = ctx.parse_element(a)?;
    let b: Fp2Element = ctx.parse_element(b)?;
    println!(
        "H_(a,b): y^2 = x^10 + x^7 + ({})*x^4 + ({})*x over GF({}^2), t^2 = {}",
        a.encode(),
        b.encode(),
        p,
        ctx.delta()
    );
    let poly = family_poly(&ctx, a, b);
    let squarefree = poly.is_squarefree()?;
    println!("squarefree: {squarefree}");
    if !squarefree {
        println!("the equation does not define a hyperelliptic curve; no Cartier-Manin matrix");
        return Ok(ExitCode::SUCCESS);
    }
    let m = cm_matrix_generic(&poly, 4)?;
    println!("cartier-manin matrix:");
    for i in 1..=4 {
        let row: Vec<String> = (1..=4).map(|j| m.entry(i, j).encode()).collect();
        println!("  [{}]", row.join(", "));
    }
    let ss = m.is_zero();
    println!("superspecial: {ss}");
    if ss {
        println!("A4: {}", is_a4(&ctx, a, b, seed)?);
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(min: u64, max: u64, seed: u64) -> anyhow::Result<ExitCode> {
    let config = SearchConfig {
        seed,
        ..SearchConfig::default()
    };
    let reports = enumerate_range(min, max, &config)?;
    let comparison = check_against_fixture(&reports);
    for r in &reports {
        let status = if comparison.discrepancies.iter().any(|d| d.p == r.p) {
            "MISMATCH"
        } else if comparison.uncovered.contains(&r.p) {
            "uncovered"
        } else {
            "ok"
        };
        println!(
            "p={} classes={} gcd_degree={} [{status}]",
            r.p, r.num_classes, r.gcd_degree
        );
    }
    for d in &comparison.discrepancies {
        eprintln!("discrepancy: {d}");
    }
    if comparison.is_clean() {
        println!(
            "checked {} prime(s): all counts match the published tables",
            reports.len()
        );
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{} discrepancy(ies)", comparison.discrepancies.len());
        Ok(ExitCode::FAILURE)
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    let run = match &cli.command {
        Command::Enumerate { run, .. }
        | Command::Oracle { run, .. }
        | Command::Curve { run, .. }
        | Command::Check { run, .. } => run,
    };
    let seed = match seed_from(run) {
        Ok(s) => s,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let workers = match workers_from(run) {
        Ok(w) => w,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let outcome = with_workers(workers, || match cli.command {
        Command::Enumerate {
            min,
            max,
            format,
            out,
            ..
        } => cmd_enumerate(min, max, format, out, seed),
        Command::Oracle {
            p, oracle_bound, ..
        } => cmd_oracle(p, oracle_bound, seed),
        Command::Curve { p, a, b, .. } => cmd_curve(p, &a, &b, seed),
        Command::Check { min, max, .. } => cmd_check(min, max, seed),
    });
    match outcome {
        Ok(code) => code,
        Err(err) => {
            // bad user-supplied values are argument errors; everything else is
            // a computation failure
            let arg_error = err.downcast_ref::<habenum::Error>().is_some_and(|e| {
                matches!(
                    e,
                    habenum::Error::InvalidPrime(_)
                        | habenum::Error::PrimeTooLarge(_)
                        | habenum::Error::BadElementEncoding(_)
                        | habenum::Error::OracleBoundExceeded { .. }
                )
            });
            eprintln!("error: {err}");
            ExitCode::from(if arg_error { 2 } else { 1 })
        }
    }
}
