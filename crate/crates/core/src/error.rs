//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by the engine.
///
/// Mathematical check failures that are part of a report (for example a
/// curve that fails its embedding checks inside a verifier run) are not
/// errors; they are carried as report content.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial given to {0}")]
    ZeroPolynomial(&'static str),
    #[error("invalid rational literal {0:?}")]
    ParseRational(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("curve fails embedding checks: {0}")]
    NotEmbedded(String),
    #[error("invalid scroll: {0}")]
    InvalidScroll(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid subspace: {0}")]
    InvalidSubspace(String),
    #[error("ill-posed request: {0}")]
    IllPosed(String),
    #[error("inconsistent result: {0}")]
    Inconsistent(String),
    #[error("sampling failed: {0}")]
    Sampling(String),
    #[error("unknown scenario {0:?}")]
    UnknownScenario(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed record: {0}")]
    Record(String),
}

pub type Result<T> = std::result::Result<T, Error>;
