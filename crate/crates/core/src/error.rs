use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape kind mismatch: {0} vs {1}")]
    KindMismatch(&'static str, &'static str),

    #[error("point dimension {point} does not match {shape} shapes")]
    DimensionMismatch { point: usize, shape: &'static str },

    #[error("instance is infeasible: {0}")]
    Infeasible(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("iteration limit reached after {0} pivots")]
    IterationLimit(usize),

    #[error("linear program is unbounded")]
    Unbounded,

    #[error("brute force limited to {limit} columns, got {got}")]
    SizeLimit { limit: usize, got: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
