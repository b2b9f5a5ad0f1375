//! Std side of the workspace: the Monte Carlo runner around [`rrd_core`],
//! with its config and file handling.

use std::path::{Path, PathBuf};

pub mod cli;
pub mod config;
pub mod emit;
pub mod harness;
pub mod io;

pub use config::ExperimentConfig;
pub use harness::{run_experiment, Estimator, ExperimentReport};
pub use rrd_core;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("bad input: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] rrd_core::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl HarnessError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// 1 for configuration problems, 2 for everything that fails at run time.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 1,
            _ => 2,
        }
    }
}
