use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension {0} exceeds the supported maximum of 64")]
    DimensionTooLarge(usize),

    #[error("invalid multi-index {indices:?} for n = {n}: indices must be strictly ascending and below n")]
    InvalidMultiIndex { n: usize, indices: Vec<usize> },

    #[error("rank {rank} out of range for {k}-subsets of a {n}-set")]
    RankOutOfRange { rank: usize, k: usize, n: usize },

    #[error("{what} = {value} out of range (maximum {max})")]
    DegreeOutOfRange {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("{what} = {value} below the minimum {min}")]
    DegreeTooSmall {
        what: &'static str,
        value: usize,
        min: usize,
    },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    #[error("{0} requires a symmetric input")]
    NotSymmetric(&'static str),

    #[error("{0} requires a skew-symmetric input")]
    NotSkew(&'static str),

    #[error("metric is not symmetric positive definite")]
    NotPositiveDefinite,

    #[error("matrix is singular")]
    Singular,

    #[error("{what}: dimension {n} must be divisible by {by}")]
    Divisibility {
        what: &'static str,
        n: usize,
        by: usize,
    },

    #[error("{what} requires {parity} dimension, got n = {n}")]
    Parity {
        what: &'static str,
        parity: &'static str,
        n: usize,
    },

    #[error("wrong arity: expected {expected} vectors, got {got}")]
    Arity { expected: usize, got: usize },
}
