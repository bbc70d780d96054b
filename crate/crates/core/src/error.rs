use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("vertex sequence must be strictly increasing")]
    NotIncreasing,

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid color {0}: colors are positive integers")]
    InvalidColor(u32),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The input graph contains a pattern the chosen algorithm excludes.
    #[error("graph contains an induced {pattern} at {witness:?}")]
    PatternFound { pattern: String, witness: Vec<usize> },

    #[error("improper coloring: {0}")]
    ImproperColoring(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// A proven algorithmic invariant failed; this is a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
