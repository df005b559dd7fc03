use thiserror::Error;

use crate::specfun::SpecfunError;

/// Failures raised by constructors, solvers and checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Parameters outside the range where the requested object exists.
    #[error("admissibility: {0}")]
    Admissibility(String),
    /// A support equation has no root in its admissible interval.
    #[error("no root: {0}")]
    NoRoot(String),
    /// A bracketed search ran out of window without a sign change.
    #[error("search window exhausted: {0}")]
    SearchExhausted(String),
    /// Input that is not a steady state or is otherwise malformed.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Time integration aborted.
    #[error("integration failure: {0}")]
    Integration(String),
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn admissibility(msg: impl Into<String>) -> Error {
    Error::Admissibility(msg.into())
}
