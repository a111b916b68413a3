use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("truncation too small: tail mass {tail:.3e} exceeds {threshold:.1e}")]
    TruncationTooSmall { tail: f64, threshold: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("coefficient file declares truncation {declared} but holds {found} pairs")]
    LengthMismatch { declared: usize, found: usize },

    #[error("non-finite coefficient at index {0}")]
    NonFinite(usize),

    #[error("matrix is not symmetric centrosymmetric")]
    NotCentrosymmetric,

    #[error("rank-one split not defined for j = {0}")]
    WrongParityInput(usize),

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("eigenvalue iteration did not converge")]
    NoConvergence,

    #[error("certificate failed for j = {j}: {reason}")]
    CertificateFailed { j: usize, reason: String },

    #[error("mu must be positive, got {0}")]
    MuNonPositive(f64),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("inconsistent bracket: {0}")]
    InconsistentBracket(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
