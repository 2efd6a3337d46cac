use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("singular configuration: {0}")]
    Singular(String),

    #[error("point too close to singular set: clearance {clearance:.3e} < required {required:.3e}")]
    TooCloseToSingularSet { clearance: f64, required: f64 },

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("resonant degree {degree}: projection norm {norm:.3e} exceeds tolerance {tol:.3e}")]
    Resonance { degree: usize, norm: f64, tol: f64 },

    #[error("tolerance {target:.3e} not reached, achieved {achieved:.3e}")]
    ToleranceNotReached { target: f64, achieved: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
