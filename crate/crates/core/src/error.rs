use thiserror::Error;

/// Errors raised by the numerical kernels and the metric engines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at {0}")]
    Pole(String),

    #[error("{what} did not converge within {terms} terms")]
    NonConvergence { what: &'static str, terms: usize },

    #[error("contour violation: {0}")]
    ContourViolation(String),

    #[error("contour tail not negligible at height {height}: endpoint/integral ratio {ratio:e}")]
    TailTruncation { height: f64, ratio: f64 },

    #[error("Fox H dimension {0} exceeds the supported maximum of 4")]
    DimensionLimit(usize),

    #[error("quadrature hit the subdivision limit (value {value:e}, error estimate {error_estimate:e})")]
    SubdivisionLimit { value: f64, error_estimate: f64 },

    #[error("integrand returned NaN at x = {0:e}")]
    NanIntegrand(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("engine not applicable: {0}")]
    NotApplicable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
