use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid order {n} for {family} (need at least {min})")]
    InvalidOrder {
        family: &'static str,
        n: usize,
        min: usize,
    },

    #[error("invalid circulant list for n = {n}: {reason}")]
    InvalidList { n: usize, reason: String },

    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid edge {0}-{1}: {2}")]
    InvalidEdge(usize, usize, &'static str),

    #[error("parse error ({format}) at line {line}, column {column}: {message}")]
    Parse {
        format: &'static str,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("function has {got} entries but the base graph has {expected} vertices")]
    FunctionLength { expected: usize, got: usize },

    #[error("unsupported structure: {0}")]
    Unsupported(String),

    #[error("instance has {n} vertices, above the solver cap of {cap}")]
    OverCap { n: usize, cap: usize },

    #[error("malformed instance: {0}")]
    MalformedInstance(String),

    #[error("instance is infeasible: vertex {0} cannot be dominated")]
    Infeasible(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("construction failed validation: {0}")]
    Construction(String),

    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}
