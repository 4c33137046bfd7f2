use thiserror::Error;

/// Errors raised by tensor construction and the spectral routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("tensor order must be at least 2, got {0}")]
    OrderTooSmall(usize),
    #[error("tensor dimension must be at least 1")]
    ZeroDimension,
    #[error("tensor of order {order} and dimension {dim} is too large to store densely")]
    TooLarge { order: usize, dim: usize },
    #[error("entry count mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("entry at flat offset {offset} is not finite")]
    NonFinite { offset: usize },
    #[error("multi-index {index:?} is invalid for a tensor of order {order} and dimension {dim}")]
    IndexOutOfRange {
        index: Vec<usize>,
        order: usize,
        dim: usize,
    },
    #[error("vector length {actual} does not match tensor dimension {expected}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("component {index} is negative ({value}) and the exponent {exponent} is fractional")]
    NegativeBase { index: usize, value: f64, exponent: f64 },
    #[error("tensor has negative entries")]
    NotNonnegative,
    #[error("vector must be strictly positive (component {index} is {value})")]
    NotPositive { index: usize, value: f64 },
    #[error("vector must be nonzero")]
    ZeroVector,
    #[error("iterate vanished: the shifted tensor has a zero row; retry with epsilon > 0")]
    ZeroIterate,
    #[error("tensor is not a Z-tensor (an off-diagonal entry is positive)")]
    NotZTensor,
    #[error("decomposition scalar {scalar} is below the largest diagonal entry {max_diagonal}")]
    ScalarBelowDiagonal { scalar: f64, max_diagonal: f64 },
    #[error("exact reducibility check needs dimension <= {limit}, got {dim}")]
    TooLargeForExact { dim: usize, limit: usize },
    #[error("invalid settings: {0}")]
    InvalidSettings(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
