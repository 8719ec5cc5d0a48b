use fairness_core::FairnessError;
use thiserror::Error;

use crate::config::ConfigError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(#[from] ConfigError),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid input: {0}")]
    Input(String),
    /// Domain violation in directly supplied values.
    #[error("{}: {0}", .0.kind())]
    Domain(FairnessError),
    #[error("{}: principle {principle:?}, candidate {candidate:?}: {source}", .source.kind())]
    Scoring {
        principle: String,
        candidate: String,
        source: FairnessError,
    },
    #[error("{}: {context}: {source}", .source.kind())]
    Problem {
        context: String,
        source: FairnessError,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    /// Process exit code: 2 for input and config problems, 3 for scoring failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Scoring { .. } | CliError::Problem { .. } => 3,
            _ => 2,
        }
    }
}
