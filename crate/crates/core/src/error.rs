use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid knot: {0}")]
    InvalidKnot(String),

    #[error("invalid slope {q}/{p}: {reason}")]
    InvalidSlope { p: i64, q: i64, reason: &'static str },

    #[error("P_0 is an initial condition, not a member of the family (n must be nonzero)")]
    InvalidIndex,

    #[error("M-exponent overflow while building polynomial")]
    ExponentOverflow,

    #[error("degenerate representation parameters: tr(Sc) vanishes")]
    DegenerateParameters,

    #[error("root solver failed to converge (worst residual {worst_residual:e})")]
    SolverFailure { worst_residual: f64 },

    #[error("continuation diverged at alpha = {alpha}")]
    Divergence { alpha: f64 },

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("regime error: {0}")]
    Regime(String),

    #[error("singular longitude: denominator vanishes")]
    SingularLongitude,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("malformed data: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
