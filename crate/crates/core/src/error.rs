use thiserror::Error;

use crate::exactfield::FieldError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("ambient mismatch: {0}")]
    Ambient(String),
    #[error("degree error: {0}")]
    Degree(String),
    #[error("result would lie in degree {0}; C^n = 0 for n < 0 by convention")]
    NegativeDegree(i64),
    #[error("composition slot {slot} out of range for a cochain of degree {degree}")]
    Position { slot: usize, degree: usize },
    #[error("arity mismatch: expected {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("result of {entries} entries exceeds the memory cap of {cap}")]
    Resource { entries: u128, cap: usize },
    #[error("invalid algebra: {0}")]
    Load(String),
    #[error("image is not contained in kernel; witness vector {witness:?}")]
    Inclusion { witness: Vec<String> },
    #[error("the product is not associative: {0}")]
    AssociativityRequired(String),
    #[error("contract violation: {0}")]
    Contract(String),
}
