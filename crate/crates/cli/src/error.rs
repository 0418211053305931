//! CLI error taxonomy; every failure class owns a distinct exit code.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Internal(String),
    /// Help or version text: printed to stdout, exit 0.
    #[error("{0}")]
    Help(String),
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
/// An audit run observed a refuted claim.
pub const EXIT_AUDIT_VIOLATION: i32 = 4;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io(_) => EXIT_IO,
            CliError::Internal(_) => EXIT_INTERNAL,
            CliError::Help(_) => EXIT_OK,
        }
    }
}

impl From<chsh_core::Error> for CliError {
    fn from(e: chsh_core::Error) -> Self {
        CliError::Internal(format!("computation failed: {e}"))
    }
}
