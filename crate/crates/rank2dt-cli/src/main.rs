//! Command-line driver: enumeration, generating series, vertex measures and
//! the verification suites, with text or JSON reports.

mod commands;
mod report;

use clap::{Parser, Subcommand, ValueEnum};
use report::{Outcome, Report};
use std::path::PathBuf;
use std::process::ExitCode;

/// Torus-fixed rank 2 sheaves on toric threefolds.
#[derive(Parser, Debug)]
#[command(name = "rank2dt", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    run: RunConfig,
}

/// Options shared by every command.
#[derive(clap::Args, Debug, Clone)]
pub struct RunConfig {
    /// Chart preset `c3-vABC` (digits are `v_1 v_2 v_3`, distinct points) or a threefold name.
    #[arg(long, global = true)]
    pub preset: Option<String>,
    /// Chart or global configuration document (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Truncation order or maximal size.
    #[arg(long, global = true, default_value_t = 5)]
    pub order: i64,
    /// Seed for probe points and random configurations.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; 0 uses the default pool.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
}

/// Report formats.
#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    /// Tab separated lines.
    Text,
    /// One JSON document.
    Json,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// List the classes of a chart up to the given size.
    Enumerate,
    /// Euler characteristic series `Σ ω q^{|π|}` of a chart.
    Zseries,
    /// Vertex measure series `Σ w(π) q^{|π|}` of a chart without legs.
    Wseries,
    /// Calabi-Yau specialized measure of one configuration document.
    VertexWeight,
    /// Chart series against the boxed partition product formula.
    VerifyTheoremA,
    /// Glued series on projective space against the closed formulas.
    VerifyTheoremB {
        /// Second Chern class, 1 or 2.
        #[arg(long, default_value_t = 1)]
        c2: i64,
    },
    /// Vertex measure series against Euler characteristic series.
    VerifyConjectureC,
    /// Measures against signed Euler characteristics on `C^3` and the resolved conifold.
    VerifyMainConjecture,
    /// Euler characteristic of the quotient by formula and by Čech count.
    ChiCheck {
        /// Number of random configurations when no document is given.
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = cli.run.clone();
    if run.order < 0 {
        eprintln!("error: --order must be nonnegative");
        return ExitCode::from(Outcome::InputError.code());
    }
    let result = rank2dt::par::with_workers(run.workers, || commands::dispatch(&cli.command, &run));
    let report: Report = match result {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(report::error_outcome(&e).code());
        }
    };
    let text = match run.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    match &run.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(Outcome::InputError.code());
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.outcome.code())
}
