//! Cubic G0: inner control points `(xi, -eta)` and `(xi, eta)`.
//!
//! The inner optimum has double zeros of `psi` at `t = +-1/2`. Eliminating
//! `eta` from `psi(1/2) = psi'(1/2) = 0` leaves the cubic `g1(xi)`, whose only
//! positive zero lies in `I = (xi_min, xi_max)`; `eta` then follows linearly
//! from `g2`. The outer optimum is the G2 curve with `psi(0) = psi'(1) = 0`.

use serde::{Deserialize, Serialize};

use super::{finish, ApproximantResult, BracketValues};
use crate::arc::{CaseId, CircularArc, Family, Side, SolverParams};
use crate::dd::{dd, horner, horner_f64, sqrt2, Dd};
use crate::error::{ArcError, Result};
use crate::roots::solve_widened;

/// The box `I x J` containing the inner optimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CubicG0Domain {
    pub xi_min: f64,
    pub xi_max: f64,
    pub eta_min: f64,
    pub eta_max: f64,
}

fn xi_bounds_dd(c: f64) -> (Dd, Dd) {
    let cd = dd(c);
    let xi_min = (sqrt2() * (dd(9.0) - cd * cd).sqrt() * 8.0 - cd * 5.0) / 27.0;
    let xi_max = (dd(4.0) - cd) / 3.0;
    (xi_min, xi_max)
}

pub fn cubic_g0_domain(arc: &CircularArc) -> CubicG0Domain {
    let (xi_min, xi_max) = xi_bounds_dd(arc.cos());
    let (c, s) = (arc.cos(), arc.sin());
    CubicG0Domain {
        xi_min: xi_min.into(),
        xi_max: xi_max.into(),
        eta_min: s / 3.0,
        eta_max: (3.0 - c) / (1.0 + c) * s / 3.0,
    }
}

fn g1_coeffs(c: f64) -> [Dd; 4] {
    let cd = dd(c);
    let c2 = cd * cd;
    [
        cd * (c2 * 245.0 - 4352.0),
        c2 * 1953.0 - 3840.0,
        cd * 3807.0,
        dd(2187.0),
    ]
}

/// `g1(xi) = 2187 xi^3 + 3807 c xi^2 + (1953 c^2 - 3840) xi + 245 c^3 - 4352 c`
/// and its derivative.
pub fn g1_value(arc: &CircularArc, xi: f64) -> (f64, f64) {
    horner_f64(&g1_coeffs(arc.cos()), xi)
}

/// `g1` at `xi_min` and `xi_max`.
pub fn g1_bracket(arc: &CircularArc) -> BracketValues {
    let c = arc.cos();
    let (lo, hi) = xi_bounds_dd(c);
    let coeffs = g1_coeffs(c);
    BracketValues {
        lo: lo.into(),
        hi: hi.into(),
        f_lo: horner(&coeffs, lo).0.into(),
        f_hi: horner(&coeffs, hi).0.into(),
    }
}

/// `g2(xi, eta) = -8 (1 - c^2) eta + s (27 xi^2 + 10 c xi + 3 c^2 - 40)`.
pub fn g2_residual(arc: &CircularArc, xi: f64, eta: f64) -> f64 {
    let (c, s) = (arc.cos(), arc.sin());
    -8.0 * s * s * eta + s * (27.0 * xi * xi + 10.0 * c * xi + 3.0 * c * c - 40.0)
}

pub fn solve_cubic_g0(arc: &CircularArc, side: Side) -> Result<ApproximantResult> {
    let case = CaseId {
        family: Family::CubicG0,
        side,
    };
    let (c, s) = (arc.cos(), arc.sin());
    match side {
        Side::Inner => {
            let bracket = g1_bracket(arc);
            if !(bracket.f_lo < 0.0 && bracket.f_hi > 0.0) {
                return Err(ArcError::SolverInvariant {
                    case,
                    detail: format!("g1 does not change sign on I: {bracket:?}"),
                });
            }
            let xi = solve_widened(|x| g1_value(arc, x), bracket.lo, bracket.hi, 1e-16)?;
            let eta = (27.0 * xi * xi + 10.0 * c * xi + 3.0 * c * c - 40.0) / (8.0 * s);
            let domain = cubic_g0_domain(arc);
            let slack = 1e-12;
            let inside = xi > domain.xi_min - slack
                && xi < domain.xi_max + slack
                && eta > domain.eta_min - slack
                && eta < domain.eta_max + slack;
            if !inside {
                return Err(ArcError::SolverInvariant {
                    case,
                    detail: format!("(xi, eta) = ({xi}, {eta}) outside I x J = {domain:?}"),
                });
            }
            finish(arc, case, SolverParams::two(xi, eta), &[-0.5, 0.5])
        }
        Side::Outer => {
            let xi = (4.0 - c) / 3.0;
            let eta = (1.0 - c) * (3.0 - c) / (3.0 * s);
            finish(arc, case, SolverParams::two(xi, eta), &[0.0])
        }
    }
}
