use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use qfb_core::instance::Instance;
use qfb_core::suites::{run, validate, RunOptions, SUITES};

#[derive(Parser)]
#[command(name = "qfb", version, about = "Exact checks for framed quantum principal bundles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load an instance file and check confluence, Hopf axioms and bimodule data.
    Validate { file: PathBuf },
    /// Run a check suite; the exit code is the number of failed checks.
    Run {
        file: PathBuf,
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SUITES))]
        suite: String,
        /// Word length bound for the regularity space.
        #[arg(long)]
        bound: Option<usize>,
        /// Number of random samples per identity.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Print the normal form of an expression in the horizontal algebra.
    Nf { file: PathBuf, expr: String },
}

/// Exit status for files that cannot be loaded; check failures use 0..=125.
const ERROR_EXIT: u8 = 126;

fn load(path: &Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Instance::from_json(&text).with_context(|| format!("loading {}", path.display()))
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(ERROR_EXIT)
        }
    }
}

fn execute(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Validate { file } => {
            let report = validate(&load(&file)?);
            emit(&report.render_text());
            Ok(report.exit_code() as u8)
        }
        Command::Run { file, suite, bound, samples, seed, json } => {
            let inst = load(&file)?;
            let report = run(&inst, &suite, RunOptions { bound, samples, seed })?;
            if json {
                emit(&(report.render_json() + "\n"));
            } else {
                emit(&report.render_text());
            }
            Ok(report.exit_code() as u8)
        }
        Command::Nf { file, expr } => {
            let inst = load(&file)?;
            let alg = &inst.hor.alg;
            let p = inst.ctx.poly(alg, &expr)?;
            emit(&(alg.fmt(&alg.nf(&p)) + "\n"));
            Ok(0)
        }
    }
}
