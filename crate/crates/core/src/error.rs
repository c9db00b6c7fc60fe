use thiserror::Error;

/// Errors raised by the numerical routines and the command-line front end.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    Validation(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("not a strict contraction: operator norm {norm} exceeds 1 - margin ({limit})")]
    NotContraction { norm: f64, limit: f64 },

    #[error("matrix of order {order} exceeds the enumeration cap of {cap}")]
    Capacity { order: usize, cap: usize },

    #[error("principal branch undefined: eigenvalue {re}{im:+}i has non-positive real part")]
    Branch { re: f64, im: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("verification failed in suite `{0}`")]
    Verification(String),
}

impl Error {
    /// Process exit code for this error: 1 validation, 2 numerical, 3 verification.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Validation(_)
            | Error::DimensionMismatch { .. }
            | Error::NotContraction { .. }
            | Error::Capacity { .. }
            | Error::Branch { .. } => 1,
            Error::Numerical(_) | Error::InvariantViolation(_) => 2,
            Error::Verification(_) => 3,
        }
    }

    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
