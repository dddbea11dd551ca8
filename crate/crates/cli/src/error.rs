use std::fmt;
use std::process::ExitCode;

use compdet::detengine::DetError;
use compdet::verify::VerifyError;

/// Failure classes, each with its own exit status.
#[derive(Debug)]
pub enum CliError {
    /// Invalid arguments: 2
    Args(String),
    /// A documented size guard: 3
    Guard(String),
    /// An internal invariant broke: 4
    Invariant(String),
    /// Reading or writing a file: 5
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Args(_) => 2,
            CliError::Guard(_) => 3,
            CliError::Invariant(_) => 4,
            CliError::Io(_) => 5,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Args(m) => write!(f, "invalid arguments: {m}"),
            CliError::Guard(m) => write!(f, "guard: {m}"),
            CliError::Invariant(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<DetError> for CliError {
    fn from(e: DetError) -> Self {
        match e {
            DetError::DimensionTooLarge { .. } | DetError::GuardViolation { .. } => CliError::Guard(e.to_string()),
            DetError::RExceedsN { .. } => CliError::Args(e.to_string()),
            _ => CliError::Invariant(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        CliError::Guard(e.to_string())
    }
}

impl From<compdet::poly::PolyError> for CliError {
    fn from(e: compdet::poly::PolyError) -> Self {
        CliError::Invariant(e.to_string())
    }
}

pub fn io_error(path: &std::path::Path, e: impl fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}
