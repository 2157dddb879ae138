use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid cycle notation: {0}")]
    InvalidCycle(String),

    #[error("unsupported group size: {0}")]
    UnsupportedGroup(String),

    #[error("invalid graphon model: {0}")]
    InvalidModel(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("signal space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    NotSymmetric(f64),

    #[error("eigensolver did not converge: {0}")]
    NoConvergence(String),

    #[error("generating set is invalid: {0}")]
    InvalidGeneratingSet(String),

    #[error("incomplete irrep list: sum of squared dimensions is {got}, group order is {order}")]
    IncompleteIrreps { got: usize, order: usize },

    #[error("invalid frame input: {0}")]
    InvalidFrame(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
