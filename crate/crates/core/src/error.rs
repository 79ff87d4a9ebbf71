use thiserror::Error;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// The input violates a documented precondition.
    Invalid,
    /// An internal consistency check failed. Indicates a bug, never bad input.
    Verification,
    /// A configured search or size budget would be exceeded.
    Budget,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("homomorphism is not well defined: column {column} ({detail})")]
    IllDefined { column: usize, detail: String },
    #[error("maps are not composable: {0}")]
    NotComposable(String),
    #[error("invalid simplicial complex: {0}")]
    InvalidComplex(String),
    #[error("degree {degree} out of range: {detail}")]
    DegreeOutOfRange { degree: usize, detail: String },
    #[error("degree-{degree} cochain is not a cocycle: coboundary nonzero at {location}")]
    NotACocycle { degree: usize, location: String },
    #[error("sequence is not exact: {0}")]
    NotExact(String),
    #[error("incompatible data: {0}")]
    Incompatible(String),
    #[error("invalid finite group: {0}")]
    InvalidFiniteGroup(String),
    #[error("invalid central extension: {0}")]
    InvalidExtension(String),
    #[error("invalid transition cocycle: {0}")]
    InvalidTransition(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("budget exceeded: {needed} > {budget} ({what})")]
    BudgetExceeded { what: String, needed: u128, budget: u128 },
    #[error("internal verification failed: {0}")]
    Verification(String),
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("{path}: {source}")]
    At { path: String, source: Box<Error> },
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Verification(_) => ErrorKind::Verification,
            Error::BudgetExceeded { .. } => ErrorKind::Budget,
            Error::At { source, .. } => source.kind(),
            _ => ErrorKind::Invalid,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
