use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dforms::scalar::FLOAT_RELATIVE_TOLERANCE;
use dforms_cli::commands::{self, Family, GenKind, Indices, Mode, NumList};
use dforms_cli::{CliError, Report, TensorFile};

#[derive(Parser)]
#[command(name = "dforms", version, about = "Exact double-form algebra: invariants, identity checks, Pfaffians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an invariant family on a double form file.
    Invariants {
        file: PathBuf,
        /// s, t, srq, h2k, T, N or hrpq
        #[arg(long)]
        family: Family,
        /// Indices to evaluate: `all` or a list such as `0,2..4`.
        #[arg(long, default_value = "all")]
        k: Indices,
        /// The `r` of `s_(r,q)` and `h_(r,pq)`.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run the identity suite over generated fixtures or given tensor files.
    Verify {
        /// Dimensions, e.g. `2..6` (inclusive).
        #[arg(long, default_value = "2..6")]
        n_range: NumList,
        #[arg(long, default_value = "1,2,3")]
        seeds: NumList,
        #[arg(long, env = "DFA_MODE", default_value = "exact")]
        mode: Mode,
        /// Run a single identity.
        #[arg(long)]
        only: Option<String>,
        /// Check these tensor files instead of the generated fixtures.
        #[arg(long = "input")]
        inputs: Vec<PathBuf>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Pfaffian of a form or skew bilinear form, hyperdeterminant of a multiform.
    Pfaffian {
        file: PathBuf,
        /// Number of blocks in the hyperdeterminant comparison.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Write a fixture tensor file.
    Generate {
        /// metric, symmetric, skew, general, bianchi, degenerate-bianchi,
        /// constant-curvature, rank-one, nilpotent, random-metric, form or double-form
        kind: GenKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of product terms in a Bianchi fixture.
        #[arg(long, default_value_t = 1)]
        terms: usize,
        /// Curvature of a constant-curvature fixture.
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        kappa: String,
        #[arg(long, env = "DFA_MODE", default_value = "exact")]
        mode: Mode,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

fn emit(text: &str, output: Option<&PathBuf>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, format!("{text}\n")).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            // a closed pipe is not an error worth reporting
            let _ = writeln!(out, "{text}");
            Ok(())
        }
    }
}

fn finish(report: Report, output: Option<&PathBuf>) -> Result<u8, CliError> {
    emit(&report.to_json(), output)?;
    let s = &report.summary;
    if s.checks > 0 {
        eprintln!(
            "{}: {} checks, {} passed, {} failed, {} conjectures reported",
            report.command, s.checks, s.passed, s.failures, s.conjectures
        );
        if report.mode == "float64" {
            let cmp = if s.max_relative_residual <= FLOAT_RELATIVE_TOLERANCE { "<=" } else { ">" };
            eprintln!("max relative residual {:e} {cmp} {FLOAT_RELATIVE_TOLERANCE:e}", s.max_relative_residual);
        }
    }
    Ok(report.exit_code())
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Invariants { file, family, k, r, output } => {
            let f = TensorFile::read(&file)?;
            let mut report = commands::invariants(&f, &commands::InvariantsArgs { family, k, r })?;
            report.inputs.push(file.display().to_string());
            finish(report, output.as_ref())
        }
        Command::Verify { n_range, seeds, mode, only, inputs, output } => {
            let args = commands::VerifyArgs {
                dims: n_range.0.into_iter().map(|n| n as usize).collect(),
                seeds: seeds.0,
                mode,
                only,
                inputs,
            };
            finish(commands::verify(&args)?, output.as_ref())
        }
        Command::Pfaffian { file, r, output } => {
            let f = TensorFile::read(&file)?;
            let mut report = commands::pfaffian(&f, r)?;
            report.inputs.push(file.display().to_string());
            finish(report, output.as_ref())
        }
        Command::Generate { kind, n, p, q, seed, terms, kappa, mode, output } => {
            let args = commands::GenerateArgs { kind, n, p, q, seed, terms, kappa, mode };
            emit(&commands::generate(&args)?.to_json(), output.as_ref())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
