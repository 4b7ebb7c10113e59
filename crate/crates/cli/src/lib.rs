//! Verification harness behind the `holobreak` binary.

pub mod config;
pub mod eval;
pub mod report;
pub mod suites;

use thiserror::Error;

/// Errors surfaced by the harness; each maps to a nonzero exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("expression error: {0}")]
    Expr(String),
    #[error("io error: {0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] holobreak::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
