use num_complex::Complex64 as C64;
use thiserror::Error;

/// Errors produced by the analytic and numerical machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),

    #[error("amplitudes are in the {found} basis, expected {expected}")]
    BasisMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("quasienergy splitting vanishes at t = {t}")]
    DegenerateSplitting { t: f64 },

    #[error("step size underflow at t = {t} (h = {h:e})")]
    StepUnderflow { t: f64, h: f64 },

    #[error("step budget of {0} exhausted")]
    TooManySteps(usize),

    #[error("non-finite value encountered at t = {t}")]
    NonFinite { t: f64 },

    #[error("invalid propagation window or tolerance: {0}")]
    InvalidConfig(String),

    #[error("branch of the square root cannot be tracked along the path to {target}")]
    PathRefinement { target: C64 },

    #[error("quadrature failed to reach tolerance (estimate {estimate:e})")]
    QuadratureTolerance { estimate: f64 },

    #[error("transition point {t0} is not a simple zero of the splitting")]
    NonSimpleZero { t0: C64 },

    #[error("{what} is outside its domain (value {value})")]
    Domain { what: &'static str, value: f64 },

    #[error("shape validation failed: {0}")]
    Validation(String),

    #[error("model {0} cannot be evaluated at complex time")]
    RealOnly(String),
}

pub type Result<T> = std::result::Result<T, Error>;
