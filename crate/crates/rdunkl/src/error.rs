//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} variables, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("gamma pole: argument {arg} (factor {index} of {count}) is a nonpositive integer")]
    Pole {
        arg: String,
        index: usize,
        count: usize,
    },

    #[error("partition {partition} of weight {weight} exceeds table depth {max_degree}")]
    TableTooShallow {
        partition: String,
        weight: u32,
        max_degree: u32,
    },

    #[error(
        "series truncation failed at degree {degree}: tail bound {achieved:e} above target {target:e}"
    )]
    Truncation {
        degree: usize,
        achieved: f64,
        target: f64,
        value_re: f64,
        value_im: f64,
    },

    #[error(
        "quadrature did not converge after {subdivisions} subdivisions: error estimate {error_estimate:e} (best value {value_re}{value_im:+}i)"
    )]
    Quadrature {
        subdivisions: usize,
        error_estimate: f64,
        value_re: f64,
        value_im: f64,
    },

    #[error("distribution-only regime: {0}")]
    DistributionOnly(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cost cap exceeded: {0}")]
    CostCap(String),

    #[error("internal arithmetic error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
