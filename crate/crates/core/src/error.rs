use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} supports at most {cap} qubits, got {n}")]
    Capacity { what: &'static str, n: usize, cap: usize },

    #[error("invalid Pauli label: {0}")]
    InvalidLabel(String),

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("malformed stabilizer frame: {0}")]
    MalformedFrame(String),

    #[error("{field}: {message}")]
    Validation { field: String, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("channel cannot be sampled: {0}")]
    Unsampleable(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation { field: field.into(), message: message.into() }
    }

    /// True for errors caused by a problem size beyond a backend's limits.
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_qubits(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::QubitMismatch { left, right })
    }
}

pub(crate) fn check_capacity(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n <= cap {
        Ok(())
    } else {
        Err(Error::Capacity { what, n, cap })
    }
}
