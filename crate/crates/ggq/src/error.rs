//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The behavior chain (after restart rewiring) has more than one closed
    /// communicating class, so the stationary distribution is not unique.
    #[error("degenerate behavior chain: states {unreachable:?} are unreachable from the start state")]
    DegenerateChain { unreachable: Vec<usize> },

    #[error("assumption violated: {0}")]
    AssumptionViolated(String),

    /// A trace does not cover the requested aggregation grid.
    #[error("trace {index} ends at {available} samples but the grid requires {needed}")]
    TraceTooShort {
        index: usize,
        needed: u64,
        available: u64,
    },

    #[error("schema error: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn schema(msg: impl Into<String>) -> Self {
        Error::Schema(msg.into())
    }
}
