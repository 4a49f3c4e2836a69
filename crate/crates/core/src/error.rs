use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter n = {n}: {reason}")]
    InvalidN { n: usize, reason: &'static str },

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("unsupported coefficients: {0}")]
    UnsupportedCoefficients(String),

    #[error("unsupported ring: {0}")]
    UnsupportedRing(String),

    #[error("unsupported request: {0}")]
    Unsupported(String),

    #[error("division is not exact: {0}")]
    NonExactDivision(String),

    #[error("malformed monomial: {0}")]
    MalformedMonomial(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("incompatible operands: {0}")]
    Incompatible(String),

    #[error("chain map check failed: {0}")]
    NotAChainMap(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
