use thiserror::Error;

/// Exit codes: 0 pass, 2 parse, 3 domain, 4 numeric cap, 5 assertion failure.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Lib(#[from] dunkl::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Domain(String),
    #[error("{failed} of {total} checks failed")]
    Assertion { failed: usize, total: usize },
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use dunkl::Error as E;
        match self {
            CliError::Parse(_) | CliError::Csv(_) | CliError::Json(_) => 2,
            CliError::Lib(
                E::SeriesNotConverged { .. }
                | E::GuardExhausted { .. }
                | E::ThinningCap { .. }
                | E::StepUnderflow { .. },
            ) => 4,
            CliError::Lib(_) | CliError::Io(_) | CliError::Domain(_) => 3,
            CliError::Assertion { .. } => 5,
        }
    }
}
