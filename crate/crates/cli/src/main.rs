//! `linedyn`: run criteria, build and verify certificates, trace orbits.
//!
//! Exit codes: 0 HOLDS or success, 2 REFUTED or a failed check,
//! 3 VERIFIED_UP_TO, 4 UNRESOLVED_UP_TO, 9 usage errors, 10 and up for
//! library errors (see `linedyn::Error::exit_code`).

mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "linedyn", version, about = "Exact criteria and certificates for linear dynamics on sequence spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a space file.
    Space {
        #[command(subcommand)]
        action: Validate,
    },
    /// Check an operator file.
    Op {
        #[command(subcommand)]
        action: Validate,
    },
    /// Decide a criterion.
    Check {
        criterion: Criterion,
        #[command(flatten)]
        opts: Opts,
    },
    /// Build a certificate or a basic sequence.
    Construct {
        kind: Construction,
        #[command(flatten)]
        opts: Opts,
    },
    /// Re-check a certificate file.
    Verify {
        certificate: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate coordinates of an orbit.
    Trace {
        #[arg(long)]
        op: PathBuf,
        /// Starting vector as `index:rational` pairs.
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<String>,
        #[arg(long, default_value_t = 10)]
        steps: u64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, default_value_t = 5)]
        window: usize,
        /// Write CSV instead of a JSON report.
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Validate {
    Validate {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Criterion {
    Rank,
    CorC,
    CorBes,
    FhcSchedule,
    WsGap,
    NoSubspace,
    UniversalSpan,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Construction {
    HcPrefix,
    Subspace,
    Fhc,
    BasicSeq,
}

#[derive(Debug, Clone, Args)]
pub struct Opts {
    #[arg(long)]
    pub space: Option<PathBuf>,
    #[arg(long)]
    pub op: Option<PathBuf>,
    /// Target space of the no-subspace check; defaults to `--space`.
    #[arg(long)]
    pub target: Option<PathBuf>,
    /// Target family file of the universal-span check.
    #[arg(long)]
    pub targets: Option<PathBuf>,
    /// Witness file of the no-subspace check.
    #[arg(long)]
    pub witness: Option<PathBuf>,
    #[arg(long)]
    pub horizon: Option<u64>,
    #[arg(long = "L")]
    pub l: Option<usize>,
    #[arg(long = "J")]
    pub j: Option<usize>,
    #[arg(long = "K")]
    pub k: Option<u64>,
    /// First admissible column of the rank criterion.
    #[arg(long = "N", allow_hyphen_values = true)]
    pub n: Option<i64>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Interval length searched on rows without a definite tail.
    #[arg(long)]
    pub min_len: Option<u64>,
    /// Rows examined for generated families with unknown tails.
    #[arg(long)]
    pub rows: Option<i64>,
    /// Tolerances of the basic-sequence builder.
    #[arg(long, value_delimiter = ',')]
    pub eps: Vec<String>,
    /// Also build and check the perturbed family.
    #[arg(long)]
    pub perturb: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 9 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run::run(&cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code_name());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
