use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cochains live over different graded bases ({left:?} vs {right:?})")]
    BasisMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown catalog key `{0}`")]
    UnknownKey(String),

    #[error("parameter constraint violated for `{key}`: {message}")]
    ParameterConstraint { key: String, message: String },

    #[error("subspace is not an ideal: {0}")]
    NotAnIdeal(String),

    #[error("degenerate form: {0}")]
    DegenerateForm(String),

    #[error("extension datum violates {axiom}: {detail}")]
    InvalidDatum { axiom: String, detail: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("C^{degree} has {dim} monomials, above the limit of {limit}")]
    ResourceLimit {
        degree: usize,
        dim: usize,
        limit: usize,
    },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
