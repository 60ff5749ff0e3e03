//! The simplified radial error `psi(t) = |p(t)|^2 - 1` of a curve, the radial
//! error `sqrt(1 + psi) - 1`, and one-sidedness certificates.

use serde::{Deserialize, Serialize};

use crate::arc::{BezierCurve, Side};
use crate::error::{ArcError, Result};
use crate::roots::{isolate_real_roots, PowerPolynomial};

/// Sign violation tolerated by [`certify_one_sided`].
pub const CERTIFICATE_SLACK: f64 = 1e-10;

/// Uniform samples used by [`certify_one_sided`] in addition to the critical
/// points.
pub const CERTIFICATE_GRID: usize = 10_001;

/// Critical points closer than this to `t = +-1` belong to the boundary
/// zeros and are not reported as interior touch points.
const BOUNDARY_BAND: f64 = 1e-2;

/// `psi(t) = x(t)^2 + y(t)^2 - 1` in the power basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorPolynomial {
    poly: PowerPolynomial,
}

impl ErrorPolynomial {
    pub fn from_poly(poly: PowerPolynomial) -> Self {
        Self { poly }
    }

    pub fn poly(&self) -> &PowerPolynomial {
        &self.poly
    }

    pub fn coeffs(&self) -> &[f64] {
        self.poly.coeffs()
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.poly.eval(t)
    }

    pub fn derivative(&self) -> PowerPolynomial {
        self.poly.derivative()
    }

    /// `k`-th derivative evaluated at `t`.
    pub fn derivative_at(&self, k: usize, t: f64) -> f64 {
        (0..k)
            .fold(self.poly.clone(), |p, _| p.derivative())
            .eval(t)
    }

    /// Roots of `psi'` in `(-1, 1)`, ascending.
    pub fn critical_points(&self) -> Vec<f64> {
        isolate_real_roots(&self.poly.derivative(), -1.0, 1.0)
    }

    /// Interior critical points where `psi` vanishes to working precision:
    /// the places where the curve touches the circle.
    pub fn touch_points(&self) -> Vec<f64> {
        let peak = self.max_abs_psi();
        let tol = 1e-6 * peak + 1e-14;
        self.critical_points()
            .into_iter()
            .filter(|t| 1.0 - t.abs() > BOUNDARY_BAND && self.eval(*t).abs() <= tol)
            .collect()
    }

    /// `max |psi|` over `[-1, 1]` from the endpoints, the midpoint and the
    /// critical points.
    pub fn max_abs_psi(&self) -> f64 {
        self.critical_points()
            .into_iter()
            .chain([-1.0, 0.0, 1.0])
            .map(|t| self.eval(t).abs())
            .fold(0.0, f64::max)
    }
}

pub fn build_psi(curve: &BezierCurve) -> ErrorPolynomial {
    let (xs, ys) = curve.power_coefficients();
    let x = PowerPolynomial::new(xs);
    let y = PowerPolynomial::new(ys);
    let sum = &(&x * &x) + &(&y * &y);
    ErrorPolynomial {
        poly: &sum - &PowerPolynomial::constant(1.0),
    }
}

/// `sqrt(1 + psi) - 1`, evaluated without cancellation for small `psi`.
pub fn radial_error(psi_value: f64) -> Result<f64> {
    if !(psi_value > -1.0) {
        return Err(ArcError::RadialDomain(psi_value));
    }
    Ok(psi_value / ((1.0 + psi_value).sqrt() + 1.0))
}

/// `max |psi_r(t)|` over `[-1, 1]` and the parameters where it is attained.
pub fn max_abs_radial_error(psi: &ErrorPolynomial) -> Result<(f64, Vec<f64>)> {
    if psi.poly.is_zero() {
        return Ok((0.0, Vec::new()));
    }
    let mut candidates = psi.critical_points();
    candidates.extend([-1.0, 0.0, 1.0]);
    let values = candidates
        .iter()
        .map(|&t| radial_error(psi.eval(t)).map(|r| (t, r.abs())))
        .collect::<Result<Vec<_>>>()?;
    let max = values.iter().map(|&(_, r)| r).fold(0.0, f64::max);
    if max == 0.0 {
        return Ok((0.0, Vec::new()));
    }
    let mut at: Vec<f64> = values
        .into_iter()
        .filter(|&(_, r)| r >= max * (1.0 - 1e-9))
        .map(|(t, _)| t)
        .collect();
    at.sort_by(f64::total_cmp);
    at.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    Ok((max, at))
}

/// Evidence that `psi` keeps one sign on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OneSidednessCertificate {
    pub side: Side,
    /// Largest `psi` (inner) or `-psi` (outer) seen; at most the slack when
    /// the certificate passes.
    pub worst_violation: f64,
    pub sample_count: usize,
    /// Interior critical points of `psi`.
    pub extremum_locations: Vec<f64>,
    pub max_abs_psi: f64,
    pub passed: bool,
}

pub fn certify_one_sided(psi: &ErrorPolynomial, side: Side) -> OneSidednessCertificate {
    let critical = psi.critical_points();
    let grid = (0..CERTIFICATE_GRID).map(|k| -1.0 + 2.0 * k as f64 / (CERTIFICATE_GRID - 1) as f64);
    let sign = match side {
        Side::Inner => 1.0,
        Side::Outer => -1.0,
    };
    let mut worst = f64::NEG_INFINITY;
    let mut max_abs: f64 = 0.0;
    let mut count = 0;
    for t in critical.iter().copied().chain(grid) {
        let v = psi.eval(t);
        worst = worst.max(sign * v);
        max_abs = max_abs.max(v.abs());
        count += 1;
    }
    OneSidednessCertificate {
        side,
        worst_violation: worst,
        sample_count: count,
        extremum_locations: critical,
        max_abs_psi: max_abs,
        passed: worst <= CERTIFICATE_SLACK,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arc::{control_points, CaseId, CircularArc, SolverParams};
    use std::f64::consts::PI;

    fn quad(phi: f64, xi: f64) -> ErrorPolynomial {
        let arc = CircularArc::new(phi).unwrap();
        let case = CaseId::new(2, 0, Side::Inner).unwrap();
        build_psi(&control_points(&arc, case, &SolverParams::one(xi)).unwrap())
    }

    #[test]
    fn radial_error_values() {
        assert_eq!(radial_error(0.0).unwrap(), 0.0);
        assert!((radial_error(0.5625).unwrap() - 0.25).abs() < 1e-16);
        let r = radial_error(-0.001893).unwrap();
        assert!((r + 9.47e-4).abs() < 5e-7, "{r}");
        assert!(matches!(radial_error(-1.0), Err(ArcError::RadialDomain(_))));
        assert!(radial_error(f64::NAN).is_err());
    }

    #[test]
    fn quadratic_inner_touches_at_midpoint() {
        let psi = quad(PI / 3.0, 1.5);
        assert!(psi.eval(0.0).abs() < 1e-15);
        assert!(psi.eval(1.0).abs() < 1e-15 && psi.eval(-1.0).abs() < 1e-15);
        let (err, _) = max_abs_radial_error(&psi).unwrap();
        assert!((err - 3.18e-2).abs() < 5e-5, "{err}");
        let cert = certify_one_sided(&psi, Side::Inner);
        assert!(cert.passed, "{cert:?}");
        assert!(!certify_one_sided(&psi, Side::Outer).passed);
        assert_eq!(psi.touch_points(), vec![0.0]);
    }

    #[test]
    fn zero_error_is_degenerate() {
        let psi = ErrorPolynomial::from_poly(PowerPolynomial::zero());
        assert_eq!(max_abs_radial_error(&psi).unwrap(), (0.0, vec![]));
    }

    #[test]
    fn odd_coefficients_vanish() {
        let psi = quad(0.9, 1.7);
        for (k, c) in psi.coeffs().iter().enumerate() {
            if k % 2 == 1 {
                assert!(c.abs() < 1e-14, "coefficient {k} = {c}");
            }
        }
    }

    #[test]
    fn center_crossing_reports_domain_error() {
        // xi = -1 pulls the midpoint of the quadratic to the origin region.
        let arc = CircularArc::new(PI / 2.0).unwrap();
        let case = CaseId::new(2, 0, Side::Inner).unwrap();
        let psi = build_psi(&control_points(&arc, case, &SolverParams::one(0.0)).unwrap());
        assert!(matches!(
            max_abs_radial_error(&psi),
            Err(ArcError::RadialDomain(_))
        ));
    }
}
