use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed rational `{text}`: {reason}")]
    BadRational { text: String, reason: String },

    #[error("division connective delta({0}) requires n >= 1")]
    ZeroDivisor(u64),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("valuation has {got} coordinates but the formula needs {needed}")]
    ValuationTooShort { needed: usize, got: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("point lies outside the unit cube")]
    OutsideCube,

    #[error("cell budget exceeded: {cells} cells > limit {limit}")]
    BudgetExceeded { cells: usize, limit: usize },

    #[error("presentation mismatch")]
    PresentationMismatch,

    #[error("map domain/codomain mismatch: {0}")]
    MapMismatch(String),

    #[error("map image leaves the codomain at {witness}")]
    ImageNotContained { witness: String },

    #[error("generator is not an integer-coefficient function")]
    NonIntegerGenerator,

    #[error("invalid polyhedron: {0}")]
    InvalidPolyhedron(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
