use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// An internal invariant that the construction guarantees did not hold.
    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("malformed lattice: {0}")]
    MalformedLattice(String),

    #[error("lattice has no root system: minimum norm is {0}, expected 2")]
    NoRootSystem(String),

    #[error("positivity functional is degenerate: found {found} simple roots for rank {rank}")]
    DegenerateFunctional { found: usize, rank: usize },

    #[error("isometry search exceeded its budget of {0} nodes")]
    SearchBudgetExceeded(u64),

    #[error("numeric recognition failed: {0}")]
    NumericRecognition(String),

    #[error("frame error: {0}")]
    Frame(String),

    #[error("precision error: {0}")]
    Precision(String),

    #[error("stale cache file {path}: content hash mismatch")]
    StaleCache { path: String },

    #[error("parse error at {field}: {message}")]
    Parse { field: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    pub(crate) fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }
}
