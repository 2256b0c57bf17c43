use thiserror::Error;

/// Errors surfaced by the workbench. Each variant corresponds to a
/// recoverable failure the caller can report; internal invariant breakage
/// panics instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("quotient algebra is infinite dimensional: {0}")]
    InfiniteDimensional(String),

    #[error("malformed relation: {0}")]
    MalformedRelation(String),

    #[error("tensor base algebra is not commutative: {0}")]
    NonCommutativeBase(String),

    #[error("module data violates relation: {0}")]
    RelationViolated(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("operands live over different algebras: {0}")]
    AlgebraMismatch(String),

    #[error("operation undefined for the zero module: {0}")]
    ZeroModule(String),

    #[error("randomized Fitting decomposition failed after retry budget: {0}")]
    DecompositionInconclusive(String),

    #[error("module is not a member of the required class: {0}")]
    NotAMember(String),

    #[error("sequence is not exact: {0}")]
    NotExact(String),

    #[error("bad setup: {0}")]
    BadSetup(String),

    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("unsupported computation: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Syntax { line, col, msg: msg.into() }
    }
}
