//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// A caller-supplied matrix violated the operation's contract
    /// (e.g. a non-unitary input to the mesh decomposition).
    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    /// Malformed input file; `offset` is the byte position where parsing failed.
    #[error("format error at byte {offset}: {message}")]
    Format { offset: u64, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// No one-shot pruning candidate reached the accuracy floor. The reports
    /// for all candidates are carried so callers can still persist the trail.
    #[error("no one-shot candidate met the accuracy floor {acc_min}")]
    NoQualifyingCandidate {
        acc_min: f64,
        reports: Vec<crate::pruning::PruneReport>,
    },
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
