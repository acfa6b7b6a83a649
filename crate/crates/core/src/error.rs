use thiserror::Error;

/// Error type shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum CoreError {
    /// A parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A requested grid or table would exceed the configured memory budget.
    #[error("resource budget exceeded: {0}")]
    ResourceBudget(String),

    /// Caller passed data that violates an operation's alignment contract.
    #[error("contract violation: {0}")]
    Contract(String),

    /// An argument escapes the domain covered by a table or grid.
    #[error("domain/range error: {0}")]
    Range(String),

    /// A constructed table failed one of its build-time checks.
    #[error("construction check failed: {0}")]
    Construction(String),

    /// A scan or fit finished without a usable conclusion.
    #[error("numerically inconclusive: {0}")]
    Inconclusive(String),

    /// I/O or (de)serialization failure while reading/writing artifacts.
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for CoreError {
    fn from(e: std::io::Error) -> Self {
        CoreError::Io(e.to_string())
    }
}

impl From<csv::Error> for CoreError {
    fn from(e: csv::Error) -> Self {
        CoreError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CoreError {
    fn from(e: serde_json::Error) -> Self {
        CoreError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CoreError>;
