use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("inconsistent character: {0}")]
    InconsistentCharacter(String),
    #[error("level must be nonzero")]
    ZeroLevel,
    #[error("lambda_{0} must be nonzero")]
    ZeroLambda(usize),
    #[error("index window exceeded: f_{0} is outside the configured window")]
    WindowExceeded(i64),
    #[error("algebra kinds differ")]
    KindMismatch,
    #[error("vector is not restricted for this operator: {0}")]
    NonRestrictedVector(String),
    #[error("degree of the zero vector is undefined")]
    ZeroVector,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("unsupported construction: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
