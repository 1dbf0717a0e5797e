use thiserror::Error;

/// Failures of a command, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input, unwritable output.
    #[error("{0}")]
    Input(String),
    #[error("{failed} of {total} checks failed")]
    ChecksFailed { failed: usize, total: usize },
    #[error("karcher solver did not converge after {iterations} iterations; final residual = {residual:e}")]
    NotConverged { iterations: usize, residual: f64 },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ChecksFailed { .. } => 1,
            CliError::Input(_) => 2,
            CliError::NotConverged { .. } => 3,
        }
    }
}

impl From<geomean::Error> for CliError {
    fn from(e: geomean::Error) -> Self {
        match e {
            geomean::Error::NotConverged {
                iterations,
                residual,
                ..
            } => CliError::NotConverged {
                iterations,
                residual,
            },
            other => CliError::Input(other.to_string()),
        }
    }
}
