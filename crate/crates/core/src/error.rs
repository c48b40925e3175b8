use thiserror::Error;

/// Errors raised by the transformation algebra, targets and sampler.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("radius {radius} exceeds the overflow guard radius {guard}")]
    Range { radius: f64, guard: f64 },

    #[error("root finder did not converge after {iterations} iterations (last bracket [{lo}, {hi}])")]
    NoConvergence { iterations: usize, lo: f64, hi: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("target does not provide a gradient")]
    MissingGradient,

    #[error("initial state has zero target density")]
    ZeroDensityStart,

    #[error("current state has zero density; the chain invariant is violated")]
    ChainInvariant,

    #[error("series too short: need at least {needed} values, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("probe failed along ray {direction}: {reason}")]
    Probe { direction: usize, reason: String },

    #[error("iteration {iteration}: {source}")]
    AtIteration {
        iteration: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
