//! Command-line front end for `gaussdist`: bound reports, oracle metrics,
//! verification suites and parameter sweeps.

pub mod commands;
pub mod error;
pub mod format;
pub mod report;
pub mod suites;
pub mod sweep;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

pub use error::CliError;
pub use report::Report;

#[derive(Debug, Parser)]
#[command(name = "gaussdist", version, about = "Distance bounds between Gaussian states, checked against a Fock-space oracle")]
pub struct Cli {
    /// Print the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form bounds for the two states of a document.
    Bounds {
        /// State document, or `-` for stdin.
        file: PathBuf,
    },
    /// Exact distances from truncated Fock-space density matrices.
    Exact {
        file: PathBuf,
        /// Per-mode photon-number cutoff.
        #[arg(long)]
        cutoff: Option<usize>,
    },
    /// Certify the bounds on a suite of pairs: canonical, random or asymptotic.
    Verify {
        suite: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        count: Option<usize>,
        /// Fixed cutoff instead of the automatic ladder.
        #[arg(long)]
        cutoff: Option<usize>,
    },
    /// Tabulate bound and exact distances over a parameter grid as CSV.
    Sweep {
        /// thermal_vacuum or squeeze.
        family: String,
        /// Comma-separated parameter values.
        #[arg(long)]
        grid: Option<String>,
        /// CSV destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn emit(report: &Report, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let text = if json { report.to_json() + "\n" } else { report.render_text() };
    out.write_all(text.as_bytes())?;
    Ok(())
}

/// Runs one parsed command, writing its report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Bounds { file } => {
            let doc = commands::read_document(file)?;
            emit(&commands::cmd_bounds(&doc)?, cli.json, out)
        }
        Command::Exact { file, cutoff } => {
            let doc = commands::read_document(file)?;
            emit(&commands::cmd_exact(&doc, *cutoff)?, cli.json, out)
        }
        Command::Verify { suite, seed, count, cutoff } => {
            let suite = commands::Suite::parse(suite, *seed, *count)?;
            let (report, error) = commands::cmd_verify(suite, *cutoff);
            emit(&report, cli.json, out)?;
            error.map_or(Ok(()), Err)
        }
        Command::Sweep { family, grid, out: path } => {
            let family = commands::parse_family(family)?;
            let grid = match grid {
                Some(text) => commands::parse_grid(text)?,
                None => family.default_grid(),
            };
            let report = commands::cmd_sweep(family, &grid)?;
            match path {
                Some(path) => {
                    let file = std::fs::File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    sweep::write_csv(&report.sweep, std::io::BufWriter::new(file))?;
                    if cli.json {
                        emit(&report, true, out)?;
                    }
                    Ok(())
                }
                None if cli.json => emit(&report, true, out),
                None => sweep::write_csv(&report.sweep, out),
            }
        }
    }
}

/// Parses arguments, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
