use std::io;

use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed cube header: {0}")]
    Format(String),
    #[error("payload truncated: expected {expected} bytes, found {found}")]
    Truncation { expected: usize, found: usize },
    #[error("invalid data: {0}")]
    Data(String),
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),
    #[error("window out of bounds: {0}")]
    Bounds(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unknown wavelet basis '{0}'")]
    Catalog(String),
    #[error("invalid decomposition level: {0}")]
    Level(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("selection failed: {0}")]
    Selection(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

impl Error {
    /// Whether the error stems from invalid user-supplied parameters rather
    /// than from the data being processed.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Config(_) | Error::Catalog(_) | Error::Level(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
