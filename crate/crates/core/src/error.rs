use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("{what}: size {size} exceeds the guard {ceiling}")]
    Guard { what: &'static str, size: BigUint, ceiling: u64 },
    #[error("not polynomial-count within degree bound {bound}: {detail}")]
    NotPolynomial { bound: usize, detail: String },
    #[error("scalar action is not free: {0}")]
    NonFree(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("grade {0} is outside the universe")]
    MissingGrade(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn guard(what: &'static str, size: impl Into<BigUint>, ceiling: u64) -> Self {
        Error::Guard { what, size: size.into(), ceiling }
    }

    pub fn is_guard(&self) -> bool {
        matches!(self, Error::Guard { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
