//! Error type shared by the library.

use thiserror::Error;

/// Failures raised by evaluation, parsing and study code.
#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Problem data violating a structural invariant.
    #[error("invalid problem data: {0}")]
    InvalidProblem(String),
    /// Malformed scenario text. `line` is 1-based; 0 means the whole file.
    #[error("{}", parse_message(*line, message))]
    Parse { line: usize, message: String },
    /// Study configuration that cannot be run.
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn parse_message(line: usize, message: &str) -> String {
    if line == 0 {
        format!("scenario: {message}")
    } else {
        format!("scenario line {line}: {message}")
    }
}

pub type Result<T> = std::result::Result<T, Error>;
