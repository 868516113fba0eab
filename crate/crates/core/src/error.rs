use thiserror::Error;

/// Errors raised at the library boundary.
///
/// Mathematical check failures inside a verification are not errors: they are
/// recorded in the [`VerificationReport`](crate::theorem::VerificationReport).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("radicand mismatch: {0} vs {1}")]
    RadicandMismatch(u64, u64),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(usize, usize),

    #[error("{0} is a perfect square")]
    PerfectSquare(u64),

    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(u64),

    #[error("precision {0} bits is below the floor of {1} bits")]
    PrecisionTooLow(u32, u32),

    #[error("no integral value after escalating precision to {0} bits")]
    NoConvergence(u32),

    #[error("size cap exceeded: {0}")]
    SizeCap(String),

    #[error("sign check failed: {0}")]
    SignCheck(String),

    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
