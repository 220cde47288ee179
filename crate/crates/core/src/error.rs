use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid pattern basis: {0}")]
    InvalidBasis(String),

    #[error("size {requested} exceeds the exhaustive bound {limit}")]
    ExhaustiveLimit { requested: usize, limit: usize },

    #[error("{perm} is not in {class}")]
    NotInClass { perm: String, class: &'static str },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inconsistent gridding structure: {0}")]
    Inconsistent(String),

    #[error("constant term is not invertible in the coefficient ring")]
    NonInvertible,

    #[error("exact division failed in the coefficient ring")]
    InexactDivision,

    #[error("square root needs constant term 1")]
    SqrtConstant,

    #[error("no structures of size {0}")]
    ZeroCount(usize),

    #[error("exponent {0} is a non-negative integer")]
    IntegerExponent(String),

    #[error("exponent {0} is not supported (integers and half-integers only)")]
    UnsupportedExponent(String),

    #[error("fixed-point iteration did not settle at degree {0}")]
    NoConvergence(usize),

    #[error("order {requested} is beyond the prepared order {available}")]
    OrderTooLarge { requested: usize, available: usize },
}
