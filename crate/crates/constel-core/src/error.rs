use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A request over an empty domain, e.g. sieving below 2.
    #[error("empty domain: {0}")]
    EmptyDomain(String),

    /// An operation that requires a prime modulus received a composite.
    #[error("{0} is not prime")]
    NotPrime(u64),

    /// Malformed constellation input (unsorted, duplicate, nonzero start, ...).
    #[error("invalid constellation: {0}")]
    Format(String),

    /// A primorial-coordinate digit at or above its radix.
    #[error("digit {digit} at position {position} must be below {bound}")]
    CoordinateBound {
        digit: u64,
        position: usize,
        bound: u64,
    },

    /// The zero value has no leading term.
    #[error("value is zero")]
    ZeroValue,

    /// Relative populations are only comparable at equal length.
    #[error("mixed constellation lengths: {0} vs {1}")]
    MixedLengths(u64, u64),

    /// A search or enumeration exceeded its instance budget.
    #[error("budget exceeded; last completed stage {last_stage}")]
    BudgetExceeded { last_stage: u64 },

    /// Frontier lifting must proceed one prime at a time.
    #[error("expected next stage {expected}, got {got}")]
    StageOrder { expected: u64, got: u64 },

    /// The span is too large for the requested computation.
    #[error("unsupported span: {0}")]
    UnsupportedSpan(String),

    /// A checkpoint was written for a different tuple.
    #[error("checkpoint digest mismatch: expected {expected}, found {found}")]
    DigestMismatch { expected: String, found: String },

    /// A checkpoint file failed structural validation.
    #[error("invalid checkpoint: {0}")]
    Checkpoint(String),

    /// Any other precondition violation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
