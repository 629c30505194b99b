use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be {requirement}, got {value}")]
    Domain {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },
    #[error("cold reservoir must be thermal (squeeze_r = 0), got r = {0}")]
    SqueezedColdBath(f64),
    #[error("invalid cycle configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("invalid sweep range: {0}")]
    InvalidRange(&'static str),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),
    #[error("matrix is singular")]
    Singular,
    #[error("cutoff {cutoff} too small: truncated population {tail:e} exceeds {limit:e}, use a larger cutoff")]
    CutoffTooSmall {
        cutoff: usize,
        tail: f64,
        limit: f64,
    },
    #[error("steady state not reached: {0}")]
    NotConverged(String),
    #[error("expectation value has imaginary residue {0:e}")]
    NonRealExpectation(f64),
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Domain {
            name,
            requirement: "positive and finite",
            value,
        })
    }
}

pub(crate) fn non_negative(name: &'static str, value: f64) -> Result<f64> {
    if value >= 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Domain {
            name,
            requirement: "non-negative and finite",
            value,
        })
    }
}
