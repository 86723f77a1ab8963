use thiserror::Error;

use crate::cyclic_ring::RingElement;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: String, right: String },

    #[error("operation not supported for modulus {0}")]
    UnsupportedModulus(String),

    /// `witness`, when present, is a nonzero `b` with `a * b = 0`.
    #[error("element is not invertible")]
    NotInvertible { witness: Option<Box<RingElement>> },

    #[error("evaluation at -1 needs N even (got N = {0})")]
    NOdd(usize),

    #[error("{0} does not divide {1}")]
    NotDivisor(usize, usize),

    #[error("k = {k} is not coprime to N = {n}")]
    NotCoprime { n: usize, k: i64 },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("params mismatch: {0}")]
    ParamsMismatch(String),

    #[error("coordinate out of range: {0}")]
    CoordinateOutOfRange(String),

    #[error("work cap exceeded: {needed} candidates, cap {cap}")]
    WorkCapExceeded { needed: u128, cap: u128 },

    #[error("verification failure: {0}")]
    VerificationFailure(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
