//! CLI error type with the exit-code discipline: 0 success, 2 domain
//! infeasibility, 64 usage/config errors. File I/O problems also map to 64
//! to stay inside that set.

use std::fmt;

pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug)]
pub enum CliError {
    /// Wrong invocation, unreadable or malformed config/input files.
    Usage(String),
    /// The request is well-formed but physically infeasible.
    Domain(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        CliError::Domain(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Domain(_) => EXIT_DOMAIN,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "error: {msg}"),
            CliError::Domain(msg) => write!(f, "infeasible: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<trapzopt_core::Error> for CliError {
    fn from(e: trapzopt_core::Error) -> Self {
        use trapzopt_core::Error::*;
        match e {
            BadConfig(_) | BadRobotModel(_) | MalformedInput(_) => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

pub fn io_error(path: &std::path::Path, e: std::io::Error) -> CliError {
    CliError::Usage(format!("{}: {e}", path.display()))
}

pub type CliResult<T> = Result<T, CliError>;
