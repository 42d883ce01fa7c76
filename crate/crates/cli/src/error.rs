//! CLI errors and their exit codes.

use quermass_core::QuermassError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, unreadable or malformed specifications, invalid schedules.
    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Compute(#[from] QuermassError),

    #[error("i/o error: {0}")]
    Io(String),
}

impl CliError {
    /// 2 for configuration problems, 3 for geometry or numerical failures,
    /// 1 for I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute(e) if e.is_input_error() => 2,
            CliError::Compute(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
