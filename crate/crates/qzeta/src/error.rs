use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// The mathematical operation is not defined for the given input
    /// (poles, divergent series, q = 1, and the like).
    #[error("domain: {0}")]
    Domain(String),

    /// The input is structurally invalid (wrong lengths, bad ranges,
    /// mismatched cyclotomic levels, caps exceeded).
    #[error("argument: {0}")]
    Argument(String),

    /// A numeric evaluation failed: non-finite intermediate, iteration
    /// cap reached, or a certified bound could not be met.
    #[error("evaluation: {0}")]
    Evaluation(String),

    /// The requested budget cannot certify the requested digits.
    /// Never silently degraded into a wrong bound.
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    /// Relation searches refuse to run below their precision floor.
    #[error("precision floor: {0}")]
    PrecisionFloor(String),

    /// `relate t2-recover` could not find the expected relation.
    #[error("relation not found: {0}")]
    RelationNotFound(String),

    /// Input text could not be parsed.
    #[error("parse: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
