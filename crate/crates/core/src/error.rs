use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("materialization exceeded the cap of {limit} vertices (truncation radius too large for this family)")]
    ResourceLimit { limit: usize },

    #[error("margin violation: {0}")]
    Margin(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("inconsistent graph: {0}")]
    Inconsistent(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph is not a tree: {0}")]
    NotATree(String),

    #[error("pinch constants not verified: {violations} violation(s), first at {first}")]
    UnverifiedPinch { violations: usize, first: String },

    #[error("work budget of {0} visited sets exceeded")]
    BudgetExceeded(u64),

    #[error("schema mismatch: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors caused by bad input or violated preconditions, as
    /// opposed to I/O failures.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Io(_) | Error::Csv(_))
    }
}
