use thiserror::Error;

/// Errors raised by the library. Each variant maps to one failure class the
/// CLI turns into an exit code.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid B-spline order {0}: order must be at least 1")]
    InvalidOrder(i64),

    #[error("parameter out of range: {0}")]
    ParameterRange(String),

    /// Translates of the unit rectangle with step `a > 1` leave gaps, so the
    /// system cannot be complete.
    #[error("system is not complete: time step a = {a} exceeds 1 for the rectangle window")]
    NotComplete { a: f64 },

    #[error("window is not bounded below on [-a/2, a/2] (m = {m}); no lower bound can be certified")]
    WindowNotBoundedBelow { m: f64 },

    #[error("frequency jitter {ell} is outside [0, 1/4)")]
    FrequencyJitterOutOfRange { ell: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(
        "eigenvalue iteration did not converge after {iterations} iterations (last residual {residual:e})"
    )]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("frame iteration diverged at step {step}: error ratio exceeded 1 for 3 consecutive steps")]
    InconsistentBounds { step: usize },

    #[error("evaluation at t = {t} lies outside the signal support [{lo}, {hi}]")]
    Extrapolation { t: f64, lo: f64, hi: f64 },

    #[error("certificate is not satisfied; nothing to verify")]
    Unsatisfied,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
