//! Cubic G1: both inner control points move along the end tangents by `xi`.

use super::{finish, ApproximantResult};
use crate::arc::{CaseId, CircularArc, Family, Side, SolverParams};
use crate::error::Result;

pub fn solve_cubic_g1(arc: &CircularArc, side: Side) -> Result<ApproximantResult> {
    let case = CaseId {
        family: Family::CubicG1,
        side,
    };
    let (c, s) = (arc.cos(), arc.sin());
    match side {
        // psi(0) = 0.
        Side::Outer => {
            let xi = 4.0 * s / (3.0 * (1.0 + c));
            finish(arc, case, SolverParams::one(xi), &[0.0])
        }
        // Triple zeros at t = +-1.
        Side::Inner => {
            let xi = 2.0 / 3.0 * s * ((3.0 + c * c).sqrt() - c);
            finish(arc, case, SolverParams::one(xi), &[])
        }
    }
}
