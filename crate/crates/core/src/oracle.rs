//! Brute-force constrained minimax search, independent of the solvers.
//!
//! The oracle knows only the control-point layout of each family. It scans a
//! parameter grid, keeps the points whose error polynomial has the requested
//! sign on a fine `t`-grid, refines the best one by pattern search and then
//! re-certifies it with the exact critical-point certificate.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arc::{control_points, CaseId, CircularArc, Family, Side, SolverParams};
use crate::error::{ArcError, Result};
use crate::radial::{
    build_psi, certify_one_sided, max_abs_radial_error, radial_error, ErrorPolynomial,
    CERTIFICATE_SLACK,
};
use crate::roots::PowerPolynomial;
use crate::solvers::{cubic_g0_domain, quartic_g1_domain, solve};

/// Absolute tolerance on `psi_r` for the optimality comparison.
pub const TOL_ORACLE: f64 = 1e-6;

/// Samples of `t` used for feasibility and the objective during the search.
pub const ORACLE_T_GRID: usize = 2001;

/// Pattern search stops once every step is below this.
pub const PATTERN_STEP_FLOOR: f64 = 1e-9;

pub const MIN_GRID: usize = 64;
pub const MAX_GRID_2D: usize = 512;

/// Grid sizes used by [`oracle_cross_check`].
pub const DEFAULT_GRID_1D: usize = 1024;
pub const DEFAULT_GRID_2D: usize = 256;

/// One closed interval per free parameter: `xi`, then `eta` if present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchBox {
    pub ranges: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub case: CaseId,
    pub phi: f64,
    /// `None` when no feasible point was found.
    pub best_params_found: Option<SolverParams>,
    pub best_error_found: Option<f64>,
    /// `None` when the solver reports that no approximant exists.
    pub solver_error: Option<f64>,
    pub gap: Option<f64>,
    /// Largest grid cell width.
    pub grid_resolution: f64,
    pub grid_n: usize,
    pub feasible_count: usize,
    /// The best point passed the exact certificate.
    pub certified: bool,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        match (self.solver_error, self.best_error_found) {
            (None, found) => found.is_none(),
            (Some(_), None) => true,
            (Some(s), Some(b)) => s <= b + TOL_ORACLE,
        }
    }
}

pub fn default_grid(case: CaseId) -> usize {
    match case.family.parameter_count() {
        1 => DEFAULT_GRID_1D,
        _ => DEFAULT_GRID_2D,
    }
}

fn widen((lo, hi): (f64, f64), by: f64) -> (f64, f64) {
    let w = hi - lo;
    (lo - by * w, hi + by * w)
}

/// `[0, 3]` for one-parameter families; `I x J` widened by half its size for
/// cubic G0; for quartic G1 the image of `(3c, u~) x [8 - 5c, 8 - 5c + 2 (u~ - 3c)]`
/// under `(u, v) -> (xi, eta)`, widened by half its size.
pub fn default_search_box(arc: &CircularArc, case: CaseId) -> SearchBox {
    let ranges = match case.family {
        Family::QuadG0 | Family::CubicG1 | Family::QuarticG2 => vec![(0.0, 3.0)],
        Family::CubicG0 => {
            let d = cubic_g0_domain(arc);
            vec![
                widen((d.xi_min, d.xi_max), 0.5),
                widen((d.eta_min, d.eta_max), 0.5),
            ]
        }
        Family::QuarticG1 => {
            let d = quartic_g1_domain(arc);
            let v_hi = d.v_lo + 2.0 * (d.u_hi - d.u_lo);
            let corners = [
                (d.u_lo, d.v_lo),
                (d.u_lo, v_hi),
                (d.u_hi, d.v_lo),
                (d.u_hi, v_hi),
            ]
            .map(|(u, v)| SolverParams::from_uv(arc, u, v));
            let span = |f: &dyn Fn(&SolverParams) -> f64| {
                corners
                    .iter()
                    .map(f)
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| {
                        (a.min(x), b.max(x))
                    })
            };
            vec![
                widen(span(&|p| p.xi), 0.5),
                widen(span(&|p| p.eta.unwrap_or(0.0)), 0.5),
            ]
        }
    };
    SearchBox { ranges }
}

fn params_of(x: &[f64]) -> SolverParams {
    match x {
        [xi] => SolverParams::one(*xi),
        [xi, eta, ..] => SolverParams::two(*xi, *eta),
        [] => SolverParams::one(f64::NAN),
    }
}

fn side_sign(side: Side) -> f64 {
    match side {
        Side::Inner => 1.0,
        Side::Outer => -1.0,
    }
}

/// Quotient of `p` by `(t - root)`, remainder dropped.
fn deflate(p: &PowerPolynomial, root: f64) -> PowerPolynomial {
    let coeffs = p.coeffs();
    let Some(n) = coeffs.len().checked_sub(1) else {
        return PowerPolynomial::zero();
    };
    let mut q = vec![0.0; n];
    let mut acc = 0.0;
    for k in (1..=n).rev() {
        acc = acc * root + coeffs[k];
        q[k - 1] = acc;
    }
    PowerPolynomial::new(q)
}

/// `psi / (1 - t^2)^(k+1)` for a `G^k` family: the factor that carries the
/// sign of `psi` on `(-1, 1)`. Judging one-sidedness on it instead of on
/// `psi` keeps a small sign error next to the high-order zeros at `t = +-1`
/// from hiding under the slack.
fn sign_factor(psi: &ErrorPolynomial, continuity: u8) -> PowerPolynomial {
    let mut q = psi.poly().clone();
    for _ in 0..=continuity {
        q = deflate(&deflate(&q, 1.0), -1.0);
    }
    // (t - 1)(t + 1) = -(1 - t^2)
    if continuity % 2 == 1 {
        q.scaled(1.0)
    } else {
        q.scaled(-1.0)
    }
}

/// Objective on the sample grid: `max |psi_r|`, or `None` if infeasible.
fn sampled_objective(arc: &CircularArc, case: CaseId, x: &[f64], ts: &[f64]) -> Option<f64> {
    let curve = control_points(arc, case, &params_of(x)).ok()?;
    let psi = build_psi(&curve);
    let q = sign_factor(&psi, case.continuity());
    let sign = side_sign(case.side);
    let (mut lo, mut hi) = (0.0f64, 0.0f64);
    for &t in ts {
        let v = psi.eval(t);
        if !(v > -1.0) || sign * v > CERTIFICATE_SLACK || sign * q.eval(t) > CERTIFICATE_SLACK {
            return None;
        }
        lo = lo.min(v);
        hi = hi.max(v);
    }
    // psi_r is increasing in psi, so its extremes sit at the extremes of psi.
    Some(radial_error(lo).ok()?.abs().max(radial_error(hi).ok()?))
}

/// `max |psi_r|` over the oracle's `t`-grid for the given parameters, or
/// `None` when they do not give a one-sided curve on that grid.
pub fn sampled_error(arc: &CircularArc, case: CaseId, params: &SolverParams) -> Option<f64> {
    let x = match params.eta {
        Some(eta) => vec![params.xi, eta],
        None => vec![params.xi],
    };
    sampled_objective(arc, case, &x, &t_grid())
}

fn t_grid() -> Vec<f64> {
    (0..ORACLE_T_GRID)
        .map(|k| -1.0 + 2.0 * k as f64 / (ORACLE_T_GRID - 1) as f64)
        .collect()
}

/// Objective with the exact certificates of `psi` and of its sign factor.
fn exact_objective(arc: &CircularArc, case: CaseId, x: &[f64]) -> Option<f64> {
    let curve = control_points(arc, case, &params_of(x)).ok()?;
    let psi = build_psi(&curve);
    let q = ErrorPolynomial::from_poly(sign_factor(&psi, case.continuity()));
    if !certify_one_sided(&psi, case.side).passed || !certify_one_sided(&q, case.side).passed {
        return None;
    }
    max_abs_radial_error(&psi).ok().map(|(e, _)| e)
}

fn directions(dim: usize) -> Vec<Vec<f64>> {
    let mut dirs = Vec::new();
    for i in 0..dim {
        for s in [1.0, -1.0] {
            let mut d = vec![0.0; dim];
            d[i] = s;
            dirs.push(d);
        }
    }
    if dim == 2 {
        for (a, b) in [(1.0, 1.0), (-1.0, -1.0), (1.0, -1.0), (-1.0, 1.0)] {
            dirs.push(vec![a, b]);
        }
    }
    dirs
}

/// Polls all directions, moves to the best improving neighbour, and halves
/// the steps when none improves.
fn pattern_search(
    start: Vec<f64>,
    start_value: f64,
    mut steps: Vec<f64>,
    objective: impl Fn(&[f64]) -> Option<f64>,
) -> (Vec<f64>, f64) {
    let dirs = directions(start.len());
    let (mut x, mut best) = (start, start_value);
    for _ in 0..100_000 {
        if steps.iter().all(|&h| h < PATTERN_STEP_FLOOR) {
            break;
        }
        let mut move_to: Option<(Vec<f64>, f64)> = None;
        for d in &dirs {
            let cand: Vec<f64> = x
                .iter()
                .zip(d)
                .zip(&steps)
                .map(|((xi, di), h)| xi + di * h)
                .collect();
            if let Some(v) = objective(&cand) {
                if v < move_to.as_ref().map_or(best, |m| m.1) {
                    move_to = Some((cand, v));
                }
            }
        }
        match move_to {
            Some((cand, v)) => {
                x = cand;
                best = v;
            }
            None => steps.iter_mut().for_each(|h| *h *= 0.5),
        }
    }
    (x, best)
}

fn grid_axis((lo, hi): (f64, f64), n: usize, i: usize) -> f64 {
    lo + (hi - lo) * i as f64 / (n - 1) as f64
}

/// Grid scan plus pattern search for the best one-sided approximant of the
/// family in `search_box`.
///
/// Quartic G2 at `c = 0` admits a single curve (`xi = sqrt(3)/2`); the box
/// is then replaced by that point.
pub fn oracle_minimax(
    arc: &CircularArc,
    case: CaseId,
    search_box: &SearchBox,
    grid_n: usize,
) -> Result<OracleReport> {
    let dim = case.family.parameter_count();
    if search_box.ranges.len() != dim {
        return Err(ArcError::InvalidArgument(format!(
            "{case} has {dim} free parameters, search box has {}",
            search_box.ranges.len()
        )));
    }
    if grid_n < MIN_GRID || (dim == 2 && grid_n > MAX_GRID_2D) {
        return Err(ArcError::InvalidArgument(format!(
            "grid size {grid_n} outside [{MIN_GRID}, {}]",
            if dim == 2 { MAX_GRID_2D } else { usize::MAX }
        )));
    }
    if search_box.ranges.iter().any(|&(lo, hi)| !(lo < hi)) {
        return Err(ArcError::InvalidArgument(format!(
            "empty search box {:?}",
            search_box.ranges
        )));
    }
    let ts = t_grid();
    let spacing: Vec<f64> = search_box
        .ranges
        .iter()
        .map(|&(lo, hi)| (hi - lo) / (grid_n - 1) as f64)
        .collect();
    let grid_resolution = spacing.iter().copied().fold(0.0, f64::max);

    let degenerate = case.family == Family::QuarticG2 && arc.cos() == 0.0;
    let cells = if degenerate {
        1
    } else {
        grid_n.pow(dim as u32)
    };
    let point = |idx: usize| -> Vec<f64> {
        match dim {
            _ if degenerate => vec![0.75f64.sqrt()],
            1 => vec![grid_axis(search_box.ranges[0], grid_n, idx)],
            _ => vec![
                grid_axis(search_box.ranges[0], grid_n, idx / grid_n),
                grid_axis(search_box.ranges[1], grid_n, idx % grid_n),
            ],
        }
    };

    let feasible: Vec<(usize, f64)> = (0..cells)
        .into_par_iter()
        .filter_map(|idx| sampled_objective(arc, case, &point(idx), &ts).map(|v| (idx, v)))
        .collect();
    let feasible_count = feasible.len();
    let best_cell = feasible
        .iter()
        .copied()
        .min_by(|a, b| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0)));

    let mut report = OracleReport {
        case,
        phi: arc.phi(),
        best_params_found: None,
        best_error_found: None,
        solver_error: None,
        gap: None,
        grid_resolution,
        grid_n,
        feasible_count,
        certified: false,
    };
    let Some((idx, value)) = best_cell else {
        return Ok(report);
    };
    let start = point(idx);
    let refined = if degenerate {
        start.clone()
    } else {
        pattern_search(start.clone(), value, spacing.clone(), |x| {
            sampled_objective(arc, case, x, &ts)
        })
        .0
    };
    let (x, exact) = match exact_objective(arc, case, &refined) {
        Some(e) => (refined, Some(e)),
        None => {
            // Between samples the refined point may cross the circle; redo
            // the refinement with the exact certificate.
            match exact_objective(arc, case, &start) {
                Some(e0) if !degenerate => {
                    let (x, e) =
                        pattern_search(start, e0, spacing, |x| exact_objective(arc, case, x));
                    (x, Some(e))
                }
                Some(e0) => (start, Some(e0)),
                None => (start, None),
            }
        }
    };
    report.best_params_found = Some(params_of(&x));
    report.best_error_found = exact;
    report.certified = exact.is_some();
    if exact.is_none() {
        report.best_params_found = None;
    }
    Ok(report)
}

/// Solves `case` on `arc` and checks the result against [`oracle_minimax`]
/// on the default box and grid.
pub fn oracle_cross_check(arc: &CircularArc, case: CaseId) -> Result<OracleReport> {
    oracle_cross_check_with(arc, case, default_grid(case))
}

pub fn oracle_cross_check_with(
    arc: &CircularArc,
    case: CaseId,
    grid_n: usize,
) -> Result<OracleReport> {
    let solver_error = match solve(arc, case) {
        Ok(r) => Some(r.max_radial_error),
        Err(ArcError::NoApproximant { .. }) => None,
        Err(e) => return Err(e),
    };
    let mut report = oracle_minimax(arc, case, &default_search_box(arc, case), grid_n)?;
    report.solver_error = solver_error;
    report.gap = match (report.best_error_found, solver_error) {
        (Some(b), Some(s)) => Some(b - s),
        _ => None,
    };
    if report.passed() {
        Ok(report)
    } else {
        Err(ArcError::OptimalityViolation {
            case,
            solver_error: solver_error.unwrap_or(f64::INFINITY),
            oracle_error: report.best_error_found.unwrap_or(f64::NAN),
            params: format!("{:?}", report.best_params_found),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn quadratic_inner_rediscovered() {
        let arc = CircularArc::new(PI / 3.0).unwrap();
        let case = CaseId::new(2, 0, Side::Inner).unwrap();
        let r = oracle_minimax(&arc, case, &default_search_box(&arc, case), 1024).unwrap();
        let xi = r.best_params_found.unwrap().xi;
        assert!((xi - 1.5).abs() < 1e-4, "{xi}");
    }

    #[test]
    fn right_angle_quadratic_outer_is_empty() {
        let arc = CircularArc::new(PI / 2.0).unwrap();
        let case = CaseId::new(2, 0, Side::Outer).unwrap();
        let r = oracle_cross_check(&arc, case).unwrap();
        assert_eq!(r.feasible_count, 0);
        assert!(r.best_error_found.is_none() && r.solver_error.is_none());
    }

    #[test]
    fn sign_factor_removes_boundary_zeros() {
        let arc = CircularArc::new(0.8).unwrap();
        for case in CaseId::all() {
            let Ok(r) = solve(&arc, case) else { continue };
            let q = sign_factor(&r.psi, case.continuity());
            for t in [-0.9, -0.3, 0.2, 0.7] {
                let w = (1.0f64 - t * t).powi(case.continuity() as i32 + 1);
                let want = r.psi.eval(t);
                assert!((q.eval(t) * w - want).abs() < 1e-13, "{case} at {t}");
            }
        }
    }

    #[test]
    fn rejects_small_grids() {
        let arc = CircularArc::new(1.0).unwrap();
        let case = CaseId::new(3, 1, Side::Inner).unwrap();
        let b = default_search_box(&arc, case);
        assert!(oracle_minimax(&arc, case, &b, 10).is_err());
    }
}
