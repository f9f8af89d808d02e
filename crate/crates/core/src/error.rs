//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors produced by field construction, transforms, time integration and
/// the statistics layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("grid resolution must be a power of two >= 8, got {0}")]
    InvalidResolution(usize),

    #[error("torus length must be positive and finite, got {0}")]
    InvalidLength(f64),

    #[error("operands live on different grids")]
    GridMismatch,

    #[error("expected {expected} values for this grid, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("field is not Hermitian-symmetric: asymmetry {asymmetry:.3e} exceeds {tol:.1e} of the field magnitude")]
    NotHermitian { asymmetry: f64, tol: f64 },

    #[error("dealiased product expects 2 or 3 factors, got {0}")]
    FactorCount(usize),

    #[error("padding factor {got} is below the minimum {min} required for {factors} factors")]
    CutoffTooSmall { got: f64, min: f64, factors: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("blow-up at t = {t}: non-finite coefficient, last finite max |coeff| = {max_abs:.3e}")]
    BlowUp { t: f64, max_abs: f64 },

    #[error("need at least {needed} samples in the tail window, found {got}")]
    InsufficientTail { needed: usize, got: usize },

    #[error("zero-energy sample at t = {t}: crest factor undefined")]
    ZeroEnergySample { t: f64 },

    #[error("unknown inequality check `{0}`")]
    UnknownCheck(String),

    #[error("inequality `{name}` violated: rhs/lhs = {ratio} below 1")]
    InequalityViolated { name: String, ratio: f64 },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
