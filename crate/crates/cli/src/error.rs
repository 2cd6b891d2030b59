use quadembed::{CriterionError, GroupError};
use thiserror::Error;

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;
pub const EXIT_NOT_FOUND: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("{0}")]
    Group(#[from] GroupError),
    #[error("{0}")]
    Criterion(CriterionError),
    #[error("no embedding found: {0}")]
    NotFound(String),
    #[error("check failed: {0}")]
    CheckFailed(String),
}

impl From<CriterionError> for CliError {
    fn from(e: CriterionError) -> Self {
        match e {
            CriterionError::Group(g) => CliError::Group(g),
            other => CliError::Criterion(other),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) | CliError::Io(_) | CliError::Group(_) => {
                EXIT_USAGE
            }
            CliError::Criterion(CriterionError::Domain(_) | CriterionError::NotTransitive(_)) => {
                EXIT_USAGE
            }
            CliError::Criterion(_) | CliError::CheckFailed(_) => EXIT_FAILURE,
            CliError::NotFound(_) => EXIT_NOT_FOUND,
        }
    }
}
