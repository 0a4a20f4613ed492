//! Crate-wide error type.
//!
//! Errors are split into two families: *input* errors (malformed documents,
//! group blow-up past the configured cap, cocycle tables that fail
//! validation, dimension mismatches) and *internal* errors (assertion-grade
//! failures that indicate a bug in the engine rather than in the input,
//! e.g. an averaged dimension that fails to be a nonnegative integer).
//! The CLI maps the first family to exit code 1 and the second to 2.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("dimension mismatch: expected {expected}, found {found} ({context})")]
    DimensionMismatch {
        expected: usize,
        found: usize,
        context: String,
    },

    #[error("group closure exceeded the cap of {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("element index {index} out of range for group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("cocycle violation: {detail}")]
    CocycleViolation { detail: String },

    #[error("cocycle table is missing the entry for pair ({left}, {right})")]
    MissingEntry { left: usize, right: usize },

    #[error("element {h} does not centralize element {w}")]
    NotCentralizing { w: usize, h: usize },

    #[error("twist character violation (internal): {detail}")]
    CharacterViolation { detail: String },

    #[error("averaged dimension is not a nonnegative integer (internal): {detail}")]
    NonIntegralDimension { detail: String },

    #[error("internal error: {detail}")]
    InternalError { detail: String },

    #[error("parse error: {detail}")]
    ParseError { detail: String },
}

impl EngineError {
    /// True for errors that indicate a bug in the engine itself rather than
    /// bad input; the CLI reports these with a distinct exit code.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            EngineError::CharacterViolation { .. }
                | EngineError::NonIntegralDimension { .. }
                | EngineError::InternalError { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, EngineError>;
