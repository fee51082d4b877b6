//! CLI error type mapping onto the documented exit codes: usage problems
//! exit 2, numerical/runtime failures exit 3.

use std::fmt;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, bad config keys, values outside their domains.
    Usage(String),
    /// A computation failed after valid inputs (convergence, unsupported
    /// operator queries, I/O while writing results).
    Numeric(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Numeric(m) => write!(f, "{m}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }
}

impl From<fracres::Error> for CliError {
    fn from(e: fracres::Error) -> Self {
        CliError::Numeric(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Numeric(format!("i/o failure: {e}"))
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub type Result<T> = std::result::Result<T, CliError>;
