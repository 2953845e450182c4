use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported extension degree h={0} (supported: 2..=10)")]
    UnsupportedDegree(u32),
    #[error("modulus {modulus:#x} is not primitive of degree {h}")]
    NotPrimitive { h: u32, modulus: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("not found: {0}")]
    NotFound(String),
    #[error("zero vector has no projective point")]
    ZeroVector,
    #[error("duplicate point")]
    DuplicatePoint,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("coordinate {value} out of range for q={q}")]
    BadCoordinate { value: u64, q: usize },
    #[error("projectivity is not integral for this point set: {0}")]
    IntegralityViolated(String),
    #[error("point set is not an arc")]
    NotAnArc,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("no valid w: {0}")]
    NoValidW(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("code too small: n={n} must exceed r={r}")]
    TooSmall { n: usize, r: usize },
    #[error("instance too large for exhaustive work: {0}")]
    TooLarge(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
