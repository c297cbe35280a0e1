//! `primelab` — exhaustive verification runs, estimator error scans and
//! per-point tables for the prime-counting identities.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage/configuration
//! error, 3 I/O error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use primelab::report::{self, ExportFormat, ReportPayload, RunSummary};
use primelab::runner::{
    self, Grid, IdentityKind, Mode, ScanConfig, ScanRecords, TablePoint, DEFAULT_SIEVE_BUDGET,
};
use primelab::sieve::{OmegaTable, PrimeTable};
use primelab::Error;

#[derive(Parser)]
#[command(
    name = "primelab",
    version,
    about = "Exact verification and error measurement for prime-counting identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RangeArgs {
    /// Start of the x range (inclusive)
    #[arg(long)]
    from: u64,
    /// End of the x range (inclusive)
    #[arg(long)]
    to: u64,
    /// Evaluate on a geometric grid with this many points instead of at
    /// every integer
    #[arg(long)]
    points: Option<u32>,
    /// Export rows in this format (csv or json); without it only the
    /// summary is printed
    #[arg(long)]
    emit: Option<String>,
    /// Write exported rows to this path instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Largest x the driver may sieve for; raise explicitly for runs past
    /// the default desk scale
    #[arg(long, default_value_t = DEFAULT_SIEVE_BUDGET)]
    sieve_budget: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Exhaustively check an exact identity over a range
    Verify {
        /// One of: general, pi-formula, frac-sum, integrals
        identity: String,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Evaluate an estimator's error curve over a range
    Scan {
        /// One of: theta-estimate, nu, r, eta, dusart
        estimator: String,
        #[command(flatten)]
        range: RangeArgs,
    },
    /// Print every tracked quantity at the listed points
    Table {
        /// Comma-separated x values, each >= 2
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<u64>,
        #[arg(long, default_value_t = DEFAULT_SIEVE_BUDGET)]
        sieve_budget: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Io(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: Cli) -> primelab::Result<ExitCode> {
    match cli.command {
        Command::Verify { identity, range } => {
            let config = build_config(Mode::Verify, &identity, &range)?;
            let primes = PrimeTable::build(config.to)?;
            let omegas = if config.identity.needs_omega() {
                OmegaTable::build(config.to)?
            } else {
                OmegaTable::build(1)?
            };
            let (summary, report) = runner::run_verify(&config, &primes, &omegas)?;
            let payload = ReportPayload::Identity(report);
            emit(&config, &payload, &summary)?;
            Ok(if summary.mismatches == 0 {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Scan { estimator, range } => {
            let config = build_config(Mode::Scan, &estimator, &range)?;
            let primes = PrimeTable::build(config.to)?;
            let omegas = if config.identity.needs_omega() {
                Some(OmegaTable::build(config.to)?)
            } else {
                None
            };
            let (summary, records) = runner::run_scan(&config, &primes, omegas.as_ref())?;
            let payload = match records {
                ScanRecords::Estimates(records) => ReportPayload::Estimates {
                    estimator: config.identity.label().into(),
                    records,
                },
                ScanRecords::Dusart(records) => ReportPayload::Dusart { records },
            };
            emit(&config, &payload, &summary)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { x, sieve_budget } => {
            let max_x = x.iter().copied().max().unwrap_or(2).max(2);
            if max_x > sieve_budget {
                return Err(Error::Config(format!(
                    "x = {max_x} exceeds the sieve budget {sieve_budget}; raise it \
                     explicitly with --sieve-budget if the run is intended"
                )));
            }
            let primes = PrimeTable::build(max_x)?;
            let omegas = OmegaTable::build(max_x)?;
            let points = runner::run_table(&x, &primes, &omegas)?;
            print_table(&points);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn build_config(mode: Mode, label: &str, range: &RangeArgs) -> primelab::Result<ScanConfig> {
    let identity: IdentityKind = label.parse()?;
    let grid = match range.points {
        Some(points) => Grid::Geometric { points },
        None => Grid::EveryInteger,
    };
    let format = match &range.emit {
        Some(s) => Some(
            s.parse::<ExportFormat>()
                .map_err(Error::Config)?,
        ),
        None => None,
    };
    let config = ScanConfig {
        mode,
        identity,
        from: range.from,
        to: range.to,
        grid,
        format,
        output: range.out.clone(),
        sieve_budget: range.sieve_budget,
    };
    config.validate()?;
    Ok(config)
}

/// Write exported rows (if requested) and the run summary. Rows going to
/// standard output push the summary to standard error so the export stays
/// clean; rows going to a file leave the summary on standard output.
fn emit(
    config: &ScanConfig,
    payload: &ReportPayload,
    summary: &RunSummary,
) -> primelab::Result<()> {
    match (config.format, &config.output) {
        (None, _) => {
            println!("{summary}");
        }
        (Some(format), None) => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            report::export_report(payload, format, &mut w)?;
            w.flush()?;
            eprintln!("{summary}");
        }
        (Some(format), Some(path)) => {
            let file = File::create(path)?;
            let mut w = BufWriter::new(file);
            report::export_report(payload, format, &mut w)?;
            w.flush()?;
            println!("{summary}");
        }
    }
    Ok(())
}

fn print_table(points: &[TablePoint]) {
    println!(
        "{:>12} {:>10} {:>16} {:>14} {:>10} {:>4} {:>16} {:>16} {:>16} {:>16} {:>14} {:>16}",
        "x", "pi", "theta", "H", "G", "T", "Theta", "nu", "R", "eta", "int_theta", "int_pi"
    );
    for p in points {
        println!(
            "{:>12} {:>10} {:>16} {:>14} {:>10} {:>4} {:>16} {:>16} {:>16} {:>16} {:>14} {:>16}",
            p.x,
            p.pi,
            report::format_significant(p.theta),
            report::format_significant(p.h),
            p.g,
            p.t,
            report::format_significant(p.big_theta),
            report::format_significant(p.nu),
            report::format_significant(p.r),
            report::format_significant(p.eta),
            report::format_significant(p.integral_theta),
            report::format_significant(p.integral_pi)
        );
    }
}
