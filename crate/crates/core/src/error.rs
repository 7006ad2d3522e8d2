use thiserror::Error;

/// Errors raised by the exact and numeric layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("bad shape: {0}")]
    BadShape(String),

    #[error("matrix is not symplectic: {0}")]
    NotSymplectic(String),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("matrix is not in Gamma_g(2): {0}")]
    NotLevel2(String),

    #[error("generator index out of range: {kind}({i},{j}) for g = {g}")]
    IndexOutOfRange {
        kind: char,
        i: usize,
        j: usize,
        g: usize,
    },

    #[error("characteristics differ by an odd vector at position {0}")]
    ParityMismatch(usize),

    #[error("character interpolation inconsistent: {0}")]
    InterpolationInconsistent(String),

    #[error("point is not in the Siegel upper half-space: {0}")]
    NotUpperHalfSpace(String),

    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(f64),

    #[error("c*tau + d is numerically singular (condition estimate {0:e})")]
    SingularFactor(f64),

    #[error("only {usable} characteristic(s) above the theta floor, need at least 2")]
    TooFewUsable { usable: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
