use std::fmt;
use std::path::PathBuf;

/// CLI failures, each mapped to the documented exit code: 2 for invalid
/// parameters, 3 for I/O and ingestion failures.
#[derive(Debug)]
pub enum CliError {
    Core(deleg_core::Error),
    MissingFlag(&'static str),
    BadFlag { flag: &'static str, message: String },
    Config { path: PathBuf, message: String },
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::MissingFlag(_) | CliError::BadFlag { .. } => 2,
            CliError::Config { .. } | CliError::Io(_) => 3,
            CliError::Core(e) => match e {
                deleg_core::Error::InvalidParameter { .. }
                | deleg_core::Error::Missing(_)
                | deleg_core::Error::InvalidConfig(_) => 2,
                deleg_core::Error::InsufficientData(_)
                | deleg_core::Error::Ingestion { .. }
                | deleg_core::Error::Io(_) => 3,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => e.fmt(f),
            CliError::MissingFlag(flag) => write!(f, "missing required flag {flag}"),
            CliError::BadFlag { flag, message } => write!(f, "invalid value for {flag}: {message}"),
            CliError::Config { path, message } => {
                write!(f, "config file {}: {message}", path.display())
            }
            CliError::Io(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for CliError {}

impl From<deleg_core::Error> for CliError {
    fn from(e: deleg_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}
