use thiserror::Error;

use crate::field::ArithError;

#[derive(Debug, Clone, Error)]
pub enum CoreError {
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("root iteration did not converge (degree {degree}, residual {residual:e})")]
    RootFinding { degree: usize, residual: f64 },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("no variable to eliminate")]
    NoVariableToEliminate,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("syntax error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("not a Morse point: {0}")]
    NotMorse(String),
    #[error("normalization needs coefficients outside Q(i): {0}")]
    IrrationalNormalization(String),
    #[error("cannot land on level curve")]
    CannotLand,
    #[error("degenerate level h = 0 passes through the singular point")]
    DegenerateLevel,
    #[error("no return detected before t = {t_max}")]
    NoReturn { t_max: f64 },
    #[error("conservation lost: drift {drift:e} exceeds {tol:e}")]
    ConservationLost { drift: f64, tol: f64 },
    #[error("integration failed: {0}")]
    Integration(String),
    #[error("exact chart unavailable: direction does not split over Q(i)")]
    ExactChartUnavailable,
    #[error("Newton polygon hypothesis violated: {0}")]
    PolygonHypothesis(String),
    #[error("degenerate edge, increase generality: {0}")]
    DegenerateEdge(String),
    #[error("truncation insufficient: leading term unresolved at order {0}")]
    TruncationInsufficient(usize),
    #[error("Puiseux recursion depth exceeded ({0})")]
    RecursionDepth(usize),
    #[error("critical set not finite")]
    CriticalSetNotFinite,
    #[error("common component")]
    CommonComponent,
    #[error("Jacobian determinant is not constant: {0}")]
    NonconstantJacobian(String),
    #[error("invalid option: {0}")]
    InvalidOption(String),
}

pub type Result<T, E = CoreError> = std::result::Result<T, E>;
