use thiserror::Error;

use crate::arc::CaseId;

/// Errors produced by the arc, root-finding and solver layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ArcError {
    #[error("half-angle {0} is outside (0, pi/2]")]
    InvalidAngle(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("simplified radial error {0} <= -1: the curve reaches the circle centre")]
    RadialDomain(f64),

    #[error("unsupported case: degree {degree}, continuity G{continuity} (supported: (2,0), (3,1), (4,2), (3,0), (4,1))")]
    UnsupportedCase { degree: u8, continuity: u8 },

    #[error("case {case} requires parameter `{name}`")]
    MissingParameter { case: CaseId, name: &'static str },

    #[error("limit-case mismatch: at c = 0 the quartic G2 curve needs xi = sqrt(3)/2, got {xi}")]
    LimitCaseMismatch { xi: f64 },

    #[error("no approximant exists for {case} at phi = {phi}")]
    NoApproximant { case: CaseId, phi: f64 },

    #[error("invalid bracket [{lo}, {hi}] with f(lo) = {f_lo}, f(hi) = {f_hi}")]
    InvalidBracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("solver invariant violated for {case}: {detail}")]
    SolverInvariant { case: CaseId, detail: String },

    #[error("optimality violation for {case}: oracle found error {oracle_error:e} below solver error {solver_error:e} at {params}")]
    OptimalityViolation {
        case: CaseId,
        solver_error: f64,
        oracle_error: f64,
        params: String,
    },
}

pub type Result<T> = std::result::Result<T, ArcError>;
