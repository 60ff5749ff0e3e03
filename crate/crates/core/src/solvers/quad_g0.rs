//! Quadratic G0: one free abscissa `xi` for the middle control point.
//!
//! `psi(t, xi)` increases with `xi` for every interior `t`, so the inner
//! optimum is the largest `xi` with `psi(0) = 0` and the outer optimum the
//! smallest `xi` with `psi'(1) = 0`.

use super::{finish, ApproximantResult};
use crate::arc::{CaseId, CircularArc, Family, Side, SolverParams};
use crate::error::{ArcError, Result};

pub fn solve_quad_g0(arc: &CircularArc, side: Side) -> Result<ApproximantResult> {
    let case = CaseId {
        family: Family::QuadG0,
        side,
    };
    let c = arc.cos();
    match side {
        Side::Inner => finish(arc, case, SolverParams::one(2.0 - c), &[0.0]),
        Side::Outer => {
            if c == 0.0 {
                return Err(ArcError::NoApproximant {
                    case,
                    phi: arc.phi(),
                });
            }
            finish(arc, case, SolverParams::one(1.0 / c), &[])
        }
    }
}
