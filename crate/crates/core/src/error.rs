//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("objective evaluation produced a non-finite value")]
    NonFiniteValue,
    #[error("degenerate denominator in a direction formula")]
    DegenerateDenominator,
    #[error("unknown function id `{0}`")]
    UnknownFunction(String),
    #[error("function `{id}` does not support dimension {n}")]
    UnsupportedDimension { id: String, n: usize },
    #[error("run table has no usable cells")]
    EmptyTable,
    #[error("invalid run table: {0}")]
    InvalidTable(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
