use thiserror::Error;

/// Errors raised by arithmetic, decision procedures and certificate checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// A comparison could not be decided at the available precision.
    #[error("inconclusive at available precision: {0}")]
    Inconclusive(String),

    #[error("polynomial shape not handled: {0}")]
    ShapeMismatch(String),

    #[error("base field is not finite")]
    FieldNotFinite,

    #[error("invalid depth {0}: at least one level is required")]
    InvalidDepth(usize),

    /// The instance parameters do not satisfy the hypotheses of the decision procedure.
    #[error("condition violated: {0}")]
    ConditionViolation(String),

    #[error("certificate failed: {0}")]
    CertificateFailed(String),

    #[error("point coordinates do not pairwise commute")]
    NonCommutingPoint,

    #[error("witness rejected: {0}")]
    WitnessRejected(String),

    /// Two independent computations of the same quantity disagreed.
    #[error("cross-check mismatch: {0}")]
    CrossCheckMismatch(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
