use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("half-size {k} exceeds the configured cap {cap}")]
    SizeLimitExceeded { k: usize, cap: usize },

    #[error("half-size must be positive")]
    ZeroSize,

    #[error("half-size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("{{{t},{}}} is not a block of {pairing}", t + 1)]
    NotAnInterval { pairing: String, t: usize },

    #[error("{{{t},{}}} is not a common interval of {p} and {q}", t + 1)]
    NotCommonInterval { p: String, q: String, t: usize },

    #[error("cannot parse pairing: {0}")]
    Parse(String),

    #[error("pairing {0} is crossing")]
    NotNonCrossing(String),

    #[error("not a fixed-point-free involution: {0}")]
    NotInvolution(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("Gram matrix of half-size {k} is singular at d = {d}")]
    SingularGram { k: usize, d: String },

    #[error("invalid relation choice: {0}")]
    InvalidChoice(String),

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("d = {0} lies outside the region |d| >= 2 where the series is evaluated")]
    OutsideConvergenceRegion(String),

    #[error("verification failed: {0}")]
    VerificationFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
