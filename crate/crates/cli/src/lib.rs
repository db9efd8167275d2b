//! Command-line front end for `orbitlab`: packaged demos, config-driven
//! runs and witness certificate verification, all writing deterministic
//! JSON/CSV reports.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod demo;
pub mod report;
pub mod run;
pub mod verify;

use std::path::{Path, PathBuf};

use thiserror::Error;

pub use config::RunConfig;
pub use demo::{cmd_demo, DemoName, WitnessSize};
pub use report::{Assertion, Report};
pub use run::{cmd_run, Outcome, RunOverrides};
pub use verify::cmd_verify_certificate;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ASSERTION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] orbitlab::Error),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_IO,
            CliError::Core(orbitlab::Error::Parse { .. }) => EXIT_USAGE,
            CliError::Core(_) => EXIT_ASSERTION,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Settings shared by every subcommand.
#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    pub tol: f64,
    pub out_dir: PathBuf,
    pub json: bool,
    pub csv: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 0,
            tol: 1e-8,
            out_dir: PathBuf::from("orbitlab-out"),
            json: true,
            csv: false,
        }
    }
}

impl Options {
    pub fn validate(&self) -> CliResult<()> {
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::Usage(format!("--tol must be positive, got {}", self.tol)));
        }
        Ok(())
    }
}

/// Exit code for a finished report.
pub fn exit_code_for(report: &Report) -> i32 {
    if report.passed() {
        EXIT_OK
    } else {
        EXIT_ASSERTION
    }
}
