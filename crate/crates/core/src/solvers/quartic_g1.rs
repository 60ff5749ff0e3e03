//! Quartic G1: end tangents interpolated, free tangent length `xi` and middle
//! abscissa `eta`.
//!
//! The inner optimum coincides with the inner quartic G2 curve. The outer
//! optimum has double zeros at `t = +-(sqrt2 - 1)`; in the rotated coordinates
//! `u = 3 eta - 4 s xi`, `v = 3 eta + 4 s xi` that system reduces to the
//! quartic `p1(u)` and the linear back-substitution `p2(u, v)`. The optimal
//! `u` is the unique zero of `p1` on `(3c, u_tilde)`.

use serde::{Deserialize, Serialize};

use super::{finish, ApproximantResult, BracketValues};
use crate::arc::{control_points, CaseId, CircularArc, Family, Side, SolverParams};
use crate::dd::{dd, horner, horner_f64, sine_of, sqrt2, Dd};
use crate::error::{ArcError, Result};
use crate::radial::{build_psi, certify_one_sided, max_abs_radial_error};
use crate::roots::{isolate_real_roots, solve_widened, PowerPolynomial};

use super::quartic_g1_node;

/// `D = (3c, u_tilde) x [8 - 5c, inf)`, the region holding the outer optimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuarticG1Domain {
    pub u_lo: f64,
    pub u_hi: f64,
    pub v_lo: f64,
}

fn k_const() -> Dd {
    ((sqrt2() * 2.0 - 1.0) / 7.0).sqrt() * 2.0
}

fn u_tilde_dd(c: f64) -> Dd {
    let k = k_const();
    let cd = dd(c);
    k * cd * cd - (k * 2.0 - 3.0) * cd + k
}

pub fn quartic_g1_domain(arc: &CircularArc) -> QuarticG1Domain {
    let c = arc.cos();
    QuarticG1Domain {
        u_lo: 3.0 * c,
        u_hi: u_tilde_dd(c).into(),
        v_lo: 8.0 - 5.0 * c,
    }
}

/// Coefficients of `p1(u)`, constant first, including the `1 / (1 - c^2)`
/// factor.
fn p1_coeffs(c: f64) -> [Dd; 5] {
    let r = sqrt2();
    let cd = dd(c);
    let c2 = cd * cd;
    let c3 = c2 * cd;
    let c4 = c2 * c2;
    let c5 = c4 * cd;
    let c6 = c4 * c2;
    let c7 = c6 * cd;
    let c8 = c4 * c4;
    let a4 = c2 * (c2 + 1.0);
    let a3 = -(r + 3.0) * c5 * 8.0 + (r * 5.0 + 4.0) * c3 * 4.0 + (r * 3.0 + 4.0) * cd * 4.0;
    let a2 = (r * 68.0 + 125.0) * c6 * 2.0 - (r * 182.0 + 229.0) * c4 * 2.0
        + (r * 97.0 + 140.0) * c2 * 4.0
        - (r * 46.0 + 65.0) * 4.0;
    let a1 = -(r * 9.0 + 14.0) * c7 * 88.0 + (r * 89.0 + 116.0) * c5 * 12.0
        - (r * 11.0 + 16.0) * c3 * 84.0
        + (r * 36.0 + 50.0) * cd * 4.0;
    let a0 = (r * 312.0 + 457.0) * c8 * 5.0 - (r * 1236.0 + 1655.0) * c6
        + (r * 9.0 + 16.0) * c4 * 12.0
        + (r * 114.0 + 163.0) * c2 * 4.0
        + r * 192.0
        + 272.0;
    let denom = (dd(1.0) - cd) * (dd(1.0) + cd);
    [a0 / denom, a1 / denom, a2 / denom, a3 / denom, a4 / denom]
}

/// `p1(u)` and its derivative.
pub fn p1_value(arc: &CircularArc, u: f64) -> (f64, f64) {
    horner_f64(&p1_coeffs(arc.cos()), u)
}

/// `p1` at `3c` and `u_tilde`.
pub fn p1_bracket(arc: &CircularArc) -> BracketValues {
    let c = arc.cos();
    let hi = u_tilde_dd(c);
    let lo = dd(3.0) * c;
    let coeffs = p1_coeffs(c);
    BracketValues {
        lo: lo.into(),
        hi: hi.into(),
        f_lo: horner(&coeffs, lo).0.into(),
        f_hi: horner(&coeffs, hi).0.into(),
    }
}

/// Coefficients `(beta1, beta0(u))` of `p2(u, v) = (beta1 v + beta0(u)) / (c^2 - 1)`.
fn p2_coeffs(c: f64, u: Dd) -> (Dd, Dd) {
    let r = sqrt2();
    let cd = dd(c);
    let c2 = cd * cd;
    let c3 = c2 * cd;
    let c4 = c2 * c2;
    let c5 = c4 * cd;
    let c6 = c4 * c2;
    let c7 = c6 * cd;
    let c8 = c4 * c4;
    let c9 = c8 * cd;
    let u2 = u * u;
    let u3 = u2 * u;
    let beta1 =
        -(c8 * 4.0 + (r + 4.0) * c6 * 4.0 - (r * 6.0 + 1.0) * c4 + c2 * 2.0 + r * 2.0 + 3.0) * 2.0;
    let beta0 = (-(r * 2.0) + 3.0) * c9 * 36.0
        + (r * 3.0 - 5.0) * c8 * u * 16.0
        + (-(r * 198.0) + 329.0 + (-(r * 8.0) + 12.0) * u2) * c7
        + (r * 142.0 - 253.0) * c6 * u
        + (-(r * 198.0) + 169.0 + (-(r * 34.0) + 55.0) * u2) * c5
        + (r * 174.0 - 51.0 + (r * 2.0 - 3.0) * u2) * c4 * u
        + ((r * 9.0 + 43.0) * 4.0 - (r * 6.0 - 7.0) * u2 * 5.0) * c3
        - ((r * 3.0 + 7.0) * u * 16.0 + (-(r * 2.0) + 3.0) * u3) * c2
        + (r * 16.0 + 23.0) * u * 2.0
        - cd * (r * 9.0 + 10.0 + r * u2) * 4.0;
    (beta1, beta0)
}

/// The `v` solving `p2(u, v) = 0`.
pub fn p2_solve_v(arc: &CircularArc, u: f64) -> f64 {
    let (beta1, beta0) = p2_coeffs(arc.cos(), dd(u));
    (-beta0 / beta1).into()
}

/// `beta1 v + beta0(u)` relative to `|beta1 v| + |beta0(u)|`.
pub fn p2_scaled_residual(arc: &CircularArc, u: f64, v: f64) -> f64 {
    let (beta1, beta0) = p2_coeffs(arc.cos(), dd(u));
    let bv = beta1 * dd(v);
    let scale = bv.abs() + beta0.abs();
    ((bv + beta0) / scale).into()
}

/// `(xi, eta)` from `(u, v)`, rounded once from double-double.
fn params_from_uv(arc: &CircularArc, u: f64, v: f64) -> SolverParams {
    let s = sine_of(arc.cos());
    let (ud, vd) = (dd(u), dd(v));
    SolverParams {
        xi: ((vd - ud) / (s * 8.0)).into(),
        eta: Some(((ud + vd) / 6.0).into()),
        u: Some(u),
        v: Some(v),
    }
}

/// Closed-form inner optimum, identical to the inner quartic G2 curve.
pub fn quartic_g1_inner_params(arc: &CircularArc) -> SolverParams {
    let c = arc.cos();
    let cd = dd(c);
    let one = dd(1.0);
    let s = sine_of(c);
    let e2 = (one - cd) * (one - cd);
    let root = (dd(3.0) + cd * 4.0 + cd * cd).sqrt();
    let xi = (cd * s * s + e2 * root) / (s * 2.0);
    let eta = (dd(8.0) - cd * 7.0 + cd * cd * cd * 2.0 - e2 * root * 2.0) / 3.0;
    SolverParams::two(xi.into(), eta.into())
}

fn outer_uv(arc: &CircularArc, case: CaseId) -> Result<(f64, f64)> {
    let c = arc.cos();
    let bracket = p1_bracket(arc);
    // At c = 0 the optimal zero of p1 sits exactly on u_tilde.
    if !(bracket.f_lo > 0.0 && (bracket.f_hi < 0.0 || c == 0.0)) {
        return Err(ArcError::SolverInvariant {
            case,
            detail: format!("p1 does not change sign on (3c, u_tilde): {bracket:?}"),
        });
    }
    let u = solve_widened(|x| p1_value(arc, x), bracket.lo, bracket.hi, 1e-16)?;
    let v = p2_solve_v(arc, u);
    let domain = quartic_g1_domain(arc);
    let slack = 1e-12;
    if !(u > domain.u_lo - slack && u < domain.u_hi + slack && v >= domain.v_lo - slack) {
        return Err(ArcError::SolverInvariant {
            case,
            detail: format!("(u, v) = ({u}, {v}) outside D = {domain:?}"),
        });
    }
    Ok((u, v))
}

pub fn solve_quartic_g1(arc: &CircularArc, side: Side) -> Result<ApproximantResult> {
    let case = CaseId {
        family: Family::QuarticG1,
        side,
    };
    match side {
        Side::Inner => finish(arc, case, quartic_g1_inner_params(arc), &[0.0]),
        Side::Outer => {
            let (u, v) = outer_uv(arc, case)?;
            let node = quartic_g1_node();
            finish(arc, case, params_from_uv(arc, u, v), &[-node, node])
        }
    }
}

/// One real zero of `p1` with its back-substituted approximant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub params: SolverParams,
    /// `max |psi_r|` over `[-1, 1]`; infinite when the curve passes through
    /// the circle centre.
    pub max_radial_error: f64,
    /// Whether the curve stays outside the circle.
    pub is_outer: bool,
    /// The zero of `p1` on `(3c, u_tilde)`.
    pub is_optimal: bool,
}

/// Every real zero of `p1` turned into a quartic G1 curve, ascending in `u`.
///
/// Only one of them is the optimal outer approximant of the arc; the others
/// are reported for comparison.
pub fn enumerate_quartic_g1_candidates(arc: &CircularArc) -> Result<Vec<Candidate>> {
    let case = CaseId {
        family: Family::QuarticG1,
        side: Side::Outer,
    };
    let coeffs: Vec<f64> = p1_coeffs(arc.cos()).iter().map(|&x| x.into()).collect();
    let poly = PowerPolynomial::new(coeffs);
    let lead = poly.coeffs().last().copied().unwrap_or(0.0).abs();
    let bound = 1.0
        + poly
            .coeffs()
            .iter()
            .rev()
            .skip(1)
            .map(|a| a.abs() / lead)
            .fold(0.0, f64::max);
    let (u_opt, _) = outer_uv(arc, case)?;
    isolate_real_roots(&poly, -bound, bound)
        .into_iter()
        .map(|u0| {
            // Polish against the double-double p1.
            let u = solve_widened(
                |x| p1_value(arc, x),
                u0 - 1e-9 * u0.abs().max(1.0),
                u0 + 1e-9 * u0.abs().max(1.0),
                1e-16,
            )
            .unwrap_or(u0);
            let v = p2_solve_v(arc, u);
            let params = params_from_uv(arc, u, v);
            let psi = build_psi(&control_points(arc, case, &params)?);
            let max_radial_error = max_abs_radial_error(&psi)
                .map(|(e, _)| e)
                .unwrap_or(f64::INFINITY);
            Ok(Candidate {
                params,
                max_radial_error,
                is_outer: certify_one_sided(&psi, Side::Outer).passed,
                is_optimal: (u - u_opt).abs() <= 1e-9 * u_opt.abs().max(1.0),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn p1_value_at_three_c() {
        // p1(3c) = 16 (17 + 12 sqrt2) (1 - c^2)^3
        for c in [0.0, 0.2, 0.5, 0.7, 0.9] {
            let arc = CircularArc::from_cos(c).unwrap();
            let want = 16.0 * (17.0 + 12.0 * 2f64.sqrt()) * (1.0 - c * c).powi(3);
            let got = p1_bracket(&arc).f_lo;
            assert!(
                (got - want).abs() < 1e-10 * want.max(1.0),
                "c={c}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn right_angle_outer_closed_form() {
        // At c = 0 the optimal u is k and v = (5 + 2 sqrt2) k.
        let arc = CircularArc::new(PI / 2.0).unwrap();
        let r = solve_quartic_g1(&arc, Side::Outer).unwrap();
        let k = 2.0 * ((2.0 * 2f64.sqrt() - 1.0) / 7.0).sqrt();
        assert!((r.params.u.unwrap() - k).abs() < 1e-14);
        assert!((r.params.v.unwrap() - (5.0 + 2.0 * 2f64.sqrt()) * k).abs() < 1e-13);
        assert!((r.params.xi - 0.87247).abs() < 5e-6);
        assert!((r.params.eta.unwrap() - 1.50401).abs() < 5e-6);
    }

    #[test]
    fn thirty_degree_outer() {
        let r = solve_quartic_g1(&CircularArc::new(PI / 6.0).unwrap(), Side::Outer).unwrap();
        assert!((r.params.xi - 0.264734).abs() < 1e-6);
        assert!((r.params.eta.unwrap() - 1.0468).abs() < 1e-5);
        assert!((r.max_radial_error - 3.8e-8).abs() < 5e-10);
    }

    #[test]
    fn inner_error_bound() {
        let r = solve_quartic_g1(&CircularArc::new(PI / 2.0).unwrap(), Side::Inner).unwrap();
        assert!((r.params.xi - 0.75f64.sqrt()).abs() < 1e-15);
        let max_psi = r.certificate.max_abs_psi;
        let want = 27.0 * (2.0 - 3f64.sqrt()).powi(2) / 1024.0;
        assert!((max_psi - want).abs() < 1e-15, "{max_psi} vs {want}");
    }
}
