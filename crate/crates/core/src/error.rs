//! Error types shared across the library.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1} variables")]
    DimensionMismatch(usize, usize),

    #[error("shape mismatch: {context} ({left} vs {right})")]
    ShapeMismatch {
        context: &'static str,
        left: String,
        right: String,
    },

    #[error("operator is identically zero")]
    ZeroOperator,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("determinant is identically zero; adjugate representation unavailable")]
    SingularDeterminant,

    #[error("weight vector must have at least one positive entry")]
    InvalidWeights,

    #[error("invalid probe parameter: {0}")]
    BadProbeParams(String),
}

pub type Result<T> = std::result::Result<T, Error>;
