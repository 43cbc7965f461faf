use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Numeric(#[from] oscillode_core::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("{path}:{line}: {msg}")]
    Config { path: PathBuf, line: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("malformed record: {0}")]
    Format(String),
}

/// Process exit status for an error: 1 usage/validation, 2 numerical
/// non-settlement, 3 internal failure.
pub fn exit_code(err: &Error) -> i32 {
    use oscillode_core::Error as E;
    match err {
        Error::Numeric(e) => match e {
            E::InvalidInitialValue(_) | E::InvalidConfig(_) | E::Domain { .. } | E::OutOfRange { .. } => 1,
            E::NearSeparatrixIndecision { .. } => 2,
            E::StepUnderflow { .. }
            | E::TooManySteps { .. }
            | E::BracketFailure { .. }
            | E::NonMonotoneCount { .. }
            | E::UnexpectedClasses { .. } => 3,
        },
        Error::Config { .. } | Error::Invalid(_) => 1,
        Error::Io(_) | Error::Csv(_) | Error::Json(_) | Error::Format(_) => 3,
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
