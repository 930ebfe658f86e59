//! Error types shared by every module in the crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Two objects that must share dimensions do not.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A malformed argument (empty block, bad index, zero k, ...).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A clustering violates one of its invariants; the message names it.
    #[error("invalid clustering: {0}")]
    InvalidClustering(String),

    /// An anonymized cell differs from the input without being a star.
    #[error("tampered cell at row {row}, column {column}: expected \"{expected}\" or \"*\", found \"{found}\")")]
    Tamper {
        row: usize,
        column: usize,
        expected: String,
        found: String,
    },

    /// An output group is smaller than the privacy parameter.
    #[error("anonymity violation: group \"{pattern}\" has {size} rows, need at least {k}")]
    AnonymityViolation {
        pattern: String,
        size: usize,
        k: usize,
    },

    /// The instance admits no solution (k exceeds the row count, or a
    /// pattern subset cannot absorb every row).
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// A configured resource cap (row limit, partition cap, subset budget)
    /// was exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// Structural validation failure (graph not 3-regular, cover missing an
    /// edge, malformed reduction table, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// Malformed text in one of the file formats.
    #[error("parse error: {0}")]
    Parse(String),

    /// An internal invariant did not hold; indicates a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
