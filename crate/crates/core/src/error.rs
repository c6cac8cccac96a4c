use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("rational function with zero denominator")]
    ZeroDenominator,

    #[error("denominator vanishes (pole) at x = {x}")]
    Pole { x: f64 },

    #[error("x = {x} is outside the domain {domain}")]
    Domain { x: f64, domain: &'static str },

    /// The truncation cap was hit before the tail bound dropped below the
    /// requested tolerance. Carries the best partial result.
    #[error("series not converged after {terms} terms: value {value}, tail bound {tail_bound:e}")]
    NonConvergence {
        value: f64,
        tail_bound: f64,
        terms: u64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
