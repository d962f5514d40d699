use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("target is not full-dimensional (lattice rank {rank} < dimension {dim}); reachability of such targets is Skolem-hard in general")]
    NotFullDimensional { rank: usize, dim: usize },

    #[error("resource cap exceeded: {what} ({needed} > {limit})")]
    ResourceCap {
        what: &'static str,
        needed: String,
        limit: u64,
    },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("instance has no functions")]
    EmptyFunctions,

    #[error("empty function-type combination")]
    EmptyCombo,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
