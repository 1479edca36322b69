use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition of a formula or operation was violated.
    #[error("invalid input: {message}")]
    InvalidInput {
        message: String,
        /// Which hypothesis or result the precondition comes from.
        reference: &'static str,
    },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(reference: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidInput {
            message: message.into(),
            reference,
        }
    }

    /// Stable machine-readable code used by the CLI error object.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput { .. } => "invalid_input",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::Json(_) => "malformed_json",
            Error::Io(_) => "io",
        }
    }

    pub fn reference(&self) -> &'static str {
        match self {
            Error::InvalidInput { reference, .. } => reference,
            Error::DimensionMismatch { .. } => "vector and map dimensions",
            Error::Json(_) => "JSON input",
            Error::Io(_) => "file input",
        }
    }
}

/// Returns an `InvalidInput` error unless `cond` holds.
pub(crate) fn ensure(cond: bool, reference: &'static str, message: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::invalid(reference, message()))
    }
}
