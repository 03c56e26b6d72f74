//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by parameter validation, run configuration, and trial-log
/// ingestion.
#[derive(Debug, Error)]
pub enum Error {
    /// A model parameter violated its domain invariant. The message names
    /// the parameter and the constraint it broke.
    #[error("invalid parameter `{name}`: {value} violates `{constraint}`")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    /// A required parameter was not supplied.
    #[error("missing required parameter `{0}`")]
    Missing(&'static str),

    /// A simulation or sweep configuration was rejected before any work ran.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// A trial log did not contain enough records to estimate a rate.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A trial-log line failed to parse or violated a log invariant.
    /// Line numbers are 1-based and count every line of the input,
    /// including headers and blanks.
    #[error("ingestion error at line {line}: {message}")]
    Ingestion { line: u64, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(name: &'static str, value: f64, constraint: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value,
            constraint,
        }
    }
}
