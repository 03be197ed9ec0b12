use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("no leading monomial of zero")]
    ZeroPolynomial,
    #[error("expected weight {expected}, found {found}")]
    WrongWeight { expected: i64, found: i64 },
    #[error("word of non-negative weight {0} cannot be split into weight -1 factors")]
    NonNegativeWeight(i64),
    #[error("word needs weight -1 and at least two letters of positive order")]
    SubwordPrecondition,
    #[error("polynomial is not homogeneous in generator {0}")]
    NotHomogeneous(String),
    #[error("rewriting rules need order n >= 1")]
    ZeroOrderRule,
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("redex no longer occurs in the polynomial")]
    StaleRedex,
    #[error("rewriting did not terminate within {0} steps")]
    StepLimit(usize),
    #[error("no value assigned to generator {0}")]
    MissingAssignment(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid algebra: {}", .0.join("; "))]
    InvalidAlgebra(Vec<String>),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("algebra spec: {0}")]
    Spec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
