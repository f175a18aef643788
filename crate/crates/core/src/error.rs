use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    Domain(String),

    #[error("desk-scale limit exceeded: {0}")]
    ScaleLimit(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("polytope is empty")]
    Infeasible,

    /// A constructive step that the underlying theory says must succeed did
    /// not. Carries a human readable description of the instance.
    #[error("construction failed: {0}")]
    Contradiction(String),

    #[error("malformed document: {0}")]
    Document(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn scale(msg: impl Into<String>) -> Self {
        Error::ScaleLimit(msg.into())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Document(err.to_string())
    }
}
