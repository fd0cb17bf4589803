//! `tfcert`: certify, cross-check and explore linear independence of
//! time-frequency translates from a single JSON config.
//!
//! Exit codes: 0 success, 1 input error, 2 numerical refusal, 3 negative
//! verdict, 4 inconclusive.

mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Debug, Parser)]
#[command(
    name = "tfcert",
    version,
    about = "Certificates for linear independence of time-frequency translates"
)]
pub struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Refuse sampled (non-rigorous) sup estimates.
    #[arg(long, global = true)]
    pub rigorous: bool,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Omit the meta block so identical runs give identical bytes.
    #[arg(long, global = true)]
    pub no_meta: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a sufficient-condition checker.
    Certify {
        #[arg(value_enum)]
        which: CertifyKind,
    },
    /// Run an independent oracle.
    Oracle {
        #[arg(value_enum)]
        which: OracleKind,
    },
    /// Search Gaussian-Hermite windows for a small STFT tail.
    WindowSearch,
    /// Run a pinned reproduction recipe.
    Reproduce {
        /// example1, example2, er_dependence, gaussian_stft or dilation_scan.
        name: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CertifyKind {
    Lemma1,
    Thm1,
    Cor1,
    Cor2,
    Cor3,
    Thm2,
    Thm3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Gram,
    Collocation,
    ErResidual,
    StftIdentity,
    Metaplectic,
}

/// Verdict-bearing outcome of a successful run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Positive,
    Negative,
    Inconclusive,
}

impl Outcome {
    fn code(self) -> u8 {
        match self {
            Outcome::Positive => 0,
            Outcome::Negative => 3,
            Outcome::Inconclusive => 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<tfcert::Error> for Failure {
    fn from(e: tfcert::Error) -> Self {
        Self {
            code: if e.is_numerical_refusal() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
