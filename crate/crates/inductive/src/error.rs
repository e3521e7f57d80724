//! Error type shared by the whole library.

use thiserror::Error;

/// Errors raised by rule construction, evaluation, and verification.
#[derive(Debug, Error)]
pub enum InductiveError {
    /// Malformed arguments: out-of-range indices, length mismatches,
    /// parameters outside their admissible region.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A conditional probability was requested on a history of probability
    /// zero. Regularity (every finite sequence has positive probability)
    /// is an explicit postulate, so this is an error rather than a NaN.
    #[error("regularity violation: {0}")]
    RegularityViolation(String),

    /// A numerical computation degenerated (all importance weights
    /// underflowed, for instance) and no meaningful estimate exists.
    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(String),

    /// An enumeration check was asked to exceed its configured budget.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// A limit expression is undefined for the given parameters
    /// (e.g. type ratio 0 with analogy weight 0).
    #[error("undefined limit: {0}")]
    UndefinedLimit(String),
}

pub type Result<T> = std::result::Result<T, InductiveError>;
