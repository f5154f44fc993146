use thiserror::Error;

/// Errors raised by the engine. Every variant is a domain violation; there is
/// no I/O in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not invertible in Q[P] (body^2 = soul^2)")]
    NotInvertible(String),

    #[error("model mismatch: {left} vs {right}")]
    ModelMismatch { left: String, right: String },

    #[error("element is not nilpotent: degree-0 coefficient is {0}")]
    NotNilpotent(String),

    #[error("sigma_1 is only defined here for purely odd bundles (got rank {even}|{odd})")]
    NotPurelyOdd { even: usize, odd: usize },

    #[error("twist degree {0} is not an integer")]
    NonIntegralTwist(String),

    #[error("invalid rank: {0}")]
    InvalidRank(String),

    #[error("invalid root: {0}")]
    InvalidRoot(String),

    #[error("malformed element: {0}")]
    Malformed(String),

    #[error("unsupported target: {0}")]
    UnsupportedTarget(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
