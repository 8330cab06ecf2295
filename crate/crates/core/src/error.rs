use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a permutation: {0:?}")]
    InvalidPerm(Vec<usize>),
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),
    #[error("index {index} out of range (max {max})")]
    IndexOutOfRange { index: i64, max: i64 },
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("invalid interval morphism: {0}")]
    InvalidMorphism(String),
    #[error("ill-typed tree: {0}")]
    TypeViolation(String),
    #[error("colour mismatch: slot has colour {slot}, tree has output colour {tree}")]
    ColourMismatch { slot: usize, tree: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed complex: {0}")]
    MalformedComplex(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
