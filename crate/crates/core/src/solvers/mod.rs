//! Optimal inner and outer approximants for the five supported families.
//!
//! Each family module maps an arc and a side to the unique optimal free
//! parameters. [`finish`] then builds the curve, its error polynomial, the
//! radial error and the one-sidedness certificate, and checks that the
//! touch points of the error polynomial sit where the construction puts them.

mod cubic_g0;
mod cubic_g1;
mod quad_g0;
mod quartic_g1;
mod quartic_g2;

use serde::{Deserialize, Serialize};

pub use cubic_g0::{
    cubic_g0_domain, g1_bracket, g1_value, g2_residual, solve_cubic_g0, CubicG0Domain,
};
pub use cubic_g1::solve_cubic_g1;
pub use quad_g0::solve_quad_g0;
pub use quartic_g1::{
    enumerate_quartic_g1_candidates, p1_bracket, p1_value, p2_scaled_residual, p2_solve_v,
    quartic_g1_domain, quartic_g1_inner_params, solve_quartic_g1, Candidate, QuarticG1Domain,
};
pub use quartic_g2::{quartic_g2_roots, scaled_td, solve_quartic_g2, td_bracket, QuarticG2Roots};

use crate::arc::{control_points, BezierCurve, CaseId, CircularArc, Family, SolverParams};
use crate::error::{ArcError, Result};
use crate::radial::{
    build_psi, certify_one_sided, max_abs_radial_error, ErrorPolynomial, OneSidednessCertificate,
};

/// Function values at the two ends of a bracketing interval from the
/// construction, evaluated in double-double before rounding.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BracketValues {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

/// Allowed distance between a recovered touch point and its predicted place.
pub const NODE_TOL: f64 = 1e-7;

/// Below this peak `|psi|` the touch points drown in rounding noise and are
/// not checked.
pub const NODE_RESOLUTION_FLOOR: f64 = 1e-10;

/// Arc-length ratio used to place the interior double zeros of the quartic
/// G1 outer error.
pub fn quartic_g1_node() -> f64 {
    std::f64::consts::SQRT_2 - 1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproximantResult {
    pub arc: CircularArc,
    pub case: CaseId,
    pub params: SolverParams,
    pub curve: BezierCurve,
    pub psi: ErrorPolynomial,
    pub max_radial_error: f64,
    /// Parameters where `max_radial_error` is attained.
    pub error_locations: Vec<f64>,
    pub certificate: OneSidednessCertificate,
    /// Interior touch points of the error polynomial, recomputed.
    pub equioscillation_nodes: Vec<f64>,
}

/// Assembles and checks the result for already solved parameters.
///
/// `expected_nodes` are the interior touch points predicted by the
/// construction; each must be matched by a recovered touch point to
/// [`NODE_TOL`] unless the error is below [`NODE_RESOLUTION_FLOOR`].
pub fn finish(
    arc: &CircularArc,
    case: CaseId,
    params: SolverParams,
    expected_nodes: &[f64],
) -> Result<ApproximantResult> {
    let curve = control_points(arc, case, &params)?;
    let psi = build_psi(&curve);
    let (max_radial_error, error_locations) = max_abs_radial_error(&psi)?;
    let certificate = certify_one_sided(&psi, case.side);
    if !certificate.passed {
        return Err(ArcError::SolverInvariant {
            case,
            detail: format!(
                "one-sidedness violated by {:e} at phi = {}",
                certificate.worst_violation,
                arc.phi()
            ),
        });
    }
    let nodes = psi.touch_points();
    if certificate.max_abs_psi >= NODE_RESOLUTION_FLOOR {
        for &want in expected_nodes {
            if !nodes.iter().any(|t| (t - want).abs() <= NODE_TOL) {
                return Err(ArcError::SolverInvariant {
                    case,
                    detail: format!(
                        "expected touch point {want} not found (found {nodes:?}) at phi = {}",
                        arc.phi()
                    ),
                });
            }
        }
    }
    Ok(ApproximantResult {
        arc: *arc,
        case,
        params,
        curve,
        psi,
        max_radial_error,
        error_locations,
        certificate,
        equioscillation_nodes: nodes,
    })
}

/// Optimal approximant for any supported case.
pub fn solve(arc: &CircularArc, case: CaseId) -> Result<ApproximantResult> {
    match case.family {
        Family::QuadG0 => solve_quad_g0(arc, case.side),
        Family::CubicG1 => solve_cubic_g1(arc, case.side),
        Family::QuarticG2 => solve_quartic_g2(arc, case.side),
        Family::CubicG0 => solve_cubic_g0(arc, case.side),
        Family::QuarticG1 => solve_quartic_g1(arc, case.side),
    }
}

/// A named defining-equation residual of an optimal approximant.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    pub name: &'static str,
    pub value: f64,
}

/// Residuals of the equations that pin down the optimum of `result.case`,
/// evaluated on the recomputed error polynomial.
pub fn defining_residuals(result: &ApproximantResult) -> Vec<Residual> {
    use crate::arc::Side::{Inner, Outer};
    let psi = &result.psi;
    let r = |name, value| Residual { name, value };
    let node = quartic_g1_node();
    match (result.case.family, result.case.side) {
        (Family::QuadG0, Inner) => vec![r("psi(0)", psi.eval(0.0))],
        (Family::QuadG0, Outer) => vec![r("psi'(1)", psi.derivative_at(1, 1.0))],
        (Family::CubicG1, Inner) => vec![
            r("psi''(1)", psi.derivative_at(2, 1.0)),
            r("psi''(-1)", psi.derivative_at(2, -1.0)),
        ],
        (Family::CubicG1, Outer) => vec![r("psi(0)", psi.eval(0.0))],
        (Family::QuarticG2, Inner) => vec![
            r("psi(0)", psi.eval(0.0)),
            r("psi''(1)", psi.derivative_at(2, 1.0)),
        ],
        (Family::QuarticG2, Outer) => vec![r("psi'''(1)", psi.derivative_at(3, 1.0))],
        (Family::CubicG0, Inner) => vec![
            r("psi(1/2)", psi.eval(0.5)),
            r("psi'(1/2)", psi.derivative_at(1, 0.5)),
        ],
        (Family::CubicG0, Outer) => vec![
            r("psi(0)", psi.eval(0.0)),
            r("psi'(1)", psi.derivative_at(1, 1.0)),
        ],
        (Family::QuarticG1, Inner) => vec![
            r("psi(0)", psi.eval(0.0)),
            r("psi''(1)", psi.derivative_at(2, 1.0)),
        ],
        (Family::QuarticG1, Outer) => vec![
            r("psi(sqrt2-1)", psi.eval(node)),
            r("psi'(sqrt2-1)", psi.derivative_at(1, node)),
        ],
    }
}
