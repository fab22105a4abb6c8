//! Failure kinds and their exit codes.

use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Rejected parameters or unusable input/output.
    Invalid(String),
    /// An identity or tolerance check failed.
    Verification(String),
    /// Quadrature did not converge.
    NonConvergence(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Verification(_) => 1,
            Self::Invalid(_) => 2,
            Self::NonConvergence(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Invalid(m) => write!(f, "invalid parameters: {m}"),
            Self::Verification(m) => write!(f, "verification failed: {m}"),
            Self::NonConvergence(m) => write!(f, "numerical non-convergence: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<xdarboux::Error> for CliError {
    fn from(e: xdarboux::Error) -> Self {
        match e {
            xdarboux::Error::NonConvergence(_) => Self::NonConvergence(e.to_string()),
            xdarboux::Error::InvalidParameters(m) => Self::Invalid(m),
            other => Self::Invalid(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Self::Invalid(format!("I/O: {e}"))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        Self::Invalid(format!("JSON: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::Invalid(format!("CSV: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Verification(String::new()).exit_code(), 1);
        assert_eq!(CliError::Invalid(String::new()).exit_code(), 2);
        assert_eq!(CliError::NonConvergence(String::new()).exit_code(), 3);
        assert_eq!(
            CliError::from(xdarboux::Error::NonConvergence("n".into())).exit_code(),
            3
        );
        assert_eq!(
            CliError::from(xdarboux::Error::DivisionByZero).exit_code(),
            2
        );
    }
}
