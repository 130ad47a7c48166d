use thiserror::Error;

/// Exit status for usage and validation failures.
pub const EXIT_USAGE: i32 = 2;
/// Exit status for non-convergence or failed cross-checks.
pub const EXIT_INCONSISTENT: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] spinfluct::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("unknown preset '{0}'")]
    UnknownPreset(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_USAGE
    }
}
