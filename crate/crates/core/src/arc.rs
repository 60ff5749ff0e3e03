//! Canonical circular arcs, Bézier curves on `[-1, 1]`, and the control-point
//! layouts of the five approximant families.
//!
//! The canonical arc is the part of the unit circle between `(c, -s)` and
//! `(c, s)` with `c = cos(phi)`, `s = sin(phi)`. Every approximant is mirror
//! symmetric across the abscissa and interpolates both arc endpoints, so a
//! whole curve is determined by one or two free parameters.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ArcError, Result};

/// Abscissa of the middle control point of the inner quartic G2 curve at
/// `c = 0`, where the general formula degenerates to 0/0.
pub fn quartic_g2_inner_limit_abscissa() -> f64 {
    2.0 / 3.0 * (4.0 - 3f64.sqrt())
}

/// Same limit for the outer quartic G2 curve.
pub fn quartic_g2_outer_limit_abscissa() -> f64 {
    8.0 * 3f64.sqrt() / 9.0
}

/// The arc `{(cos a, sin a) : |a| <= phi}` of the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircularArc {
    phi: f64,
    c: f64,
    s: f64,
}

impl CircularArc {
    /// Arc with half-angle `phi` in `(0, pi/2]`. `phi == pi/2` (as an `f64`)
    /// yields exactly `c = 0`, `s = 1`.
    pub fn new(phi: f64) -> Result<Self> {
        if !(phi > 0.0 && phi <= FRAC_PI_2) {
            return Err(ArcError::InvalidAngle(phi));
        }
        if phi == FRAC_PI_2 {
            return Ok(Self {
                phi,
                c: 0.0,
                s: 1.0,
            });
        }
        let (s, c) = phi.sin_cos();
        Ok(Self { phi, c, s })
    }

    /// Arc with `cos(phi) = c` for `c` in `[0, 1)`.
    pub fn from_cos(c: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&c) {
            return Err(ArcError::InvalidArgument(format!(
                "cos(phi) = {c} is outside [0, 1)"
            )));
        }
        if c == 0.0 {
            return Self::new(FRAC_PI_2);
        }
        let s = ((1.0 - c) * (1.0 + c)).sqrt();
        Ok(Self {
            phi: s.atan2(c),
            c,
            s,
        })
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn cos(&self) -> f64 {
        self.c
    }

    pub fn sin(&self) -> f64 {
        self.s
    }

    /// `(c, -s)` and `(c, s)`.
    pub fn endpoints(&self) -> (Point, Point) {
        (Point::new(self.c, -self.s), Point::new(self.c, self.s))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    fn lerp(self, other: Point, lambda: f64) -> Point {
        Point::new(
            self.x + lambda * (other.x - self.x),
            self.y + lambda * (other.y - self.y),
        )
    }
}

/// Which side of the circle the approximant must stay on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `psi <= 0` on `[-1, 1]`.
    Inner,
    /// `psi >= 0` on `[-1, 1]`.
    Outer,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Inner => "inner",
            Side::Outer => "outer",
        })
    }
}

impl FromStr for Side {
    type Err = ArcError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inner" => Ok(Side::Inner),
            "outer" => Ok(Side::Outer),
            other => Err(ArcError::InvalidArgument(format!(
                "side must be `inner` or `outer`, got `{other}`"
            ))),
        }
    }
}

/// The (degree, geometric continuity) pairs with a known optimal construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    QuadG0,
    CubicG1,
    QuarticG2,
    CubicG0,
    QuarticG1,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::QuadG0,
        Family::CubicG0,
        Family::CubicG1,
        Family::QuarticG1,
        Family::QuarticG2,
    ];

    pub fn new(degree: u8, continuity: u8) -> Result<Self> {
        match (degree, continuity) {
            (2, 0) => Ok(Family::QuadG0),
            (3, 1) => Ok(Family::CubicG1),
            (4, 2) => Ok(Family::QuarticG2),
            (3, 0) => Ok(Family::CubicG0),
            (4, 1) => Ok(Family::QuarticG1),
            _ => Err(ArcError::UnsupportedCase { degree, continuity }),
        }
    }

    pub fn degree(self) -> u8 {
        match self {
            Family::QuadG0 => 2,
            Family::CubicG1 | Family::CubicG0 => 3,
            Family::QuarticG2 | Family::QuarticG1 => 4,
        }
    }

    pub fn continuity(self) -> u8 {
        match self {
            Family::QuadG0 | Family::CubicG0 => 0,
            Family::CubicG1 | Family::QuarticG1 => 1,
            Family::QuarticG2 => 2,
        }
    }

    /// Number of free shape parameters (`xi`, or `xi` and `eta`).
    pub fn parameter_count(self) -> usize {
        match self {
            Family::CubicG0 | Family::QuarticG1 => 2,
            _ => 1,
        }
    }
}

/// A fully specified approximation problem minus the arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CaseId {
    pub family: Family,
    pub side: Side,
}

impl CaseId {
    pub fn new(degree: u8, continuity: u8, side: Side) -> Result<Self> {
        Ok(Self {
            family: Family::new(degree, continuity)?,
            side,
        })
    }

    pub fn degree(&self) -> u8 {
        self.family.degree()
    }

    pub fn continuity(&self) -> u8 {
        self.family.continuity()
    }

    /// All ten supported cases, outer before inner within each family.
    pub fn all() -> Vec<CaseId> {
        Family::ALL
            .iter()
            .flat_map(|&family| {
                [Side::Outer, Side::Inner]
                    .into_iter()
                    .map(move |side| CaseId { family, side })
            })
            .collect()
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "degree {} G{} {}",
            self.degree(),
            self.continuity(),
            self.side
        )
    }
}

/// Free parameters of an approximant.
///
/// `xi` is always present. `eta` is the second parameter of the cubic G0 and
/// quartic G1 families. `u` and `v` are the rotated coordinates
/// `u = 3 eta - 4 s xi`, `v = 3 eta + 4 s xi` used by the outer quartic G1
/// construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverParams {
    pub xi: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v: Option<f64>,
}

impl SolverParams {
    pub fn one(xi: f64) -> Self {
        Self {
            xi,
            eta: None,
            u: None,
            v: None,
        }
    }

    pub fn two(xi: f64, eta: f64) -> Self {
        Self {
            xi,
            eta: Some(eta),
            u: None,
            v: None,
        }
    }

    /// Parameters from the rotated coordinates of the quartic G1 family.
    pub fn from_uv(arc: &CircularArc, u: f64, v: f64) -> Self {
        let xi = (v - u) / (8.0 * arc.sin());
        let eta = (u + v) / 6.0;
        Self {
            xi,
            eta: Some(eta),
            u: Some(u),
            v: Some(v),
        }
    }

    fn require_eta(&self, case: CaseId) -> Result<f64> {
        self.eta
            .ok_or(ArcError::MissingParameter { case, name: "eta" })
    }
}

/// `C(n, i) ((1+t)/2)^i ((1-t)/2)^(n-i)`.
pub fn bernstein_eval(n: usize, i: usize, t: f64) -> Result<f64> {
    if i > n {
        return Err(ArcError::InvalidArgument(format!(
            "Bernstein index {i} exceeds degree {n}"
        )));
    }
    let lambda = 0.5 * (1.0 + t);
    let mu = 0.5 * (1.0 - t);
    Ok(binomial(n, i) * lambda.powi(i as i32) * mu.powi((n - i) as i32))
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// A planar Bézier curve parameterised over `[-1, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BezierCurve {
    control_points: Vec<Point>,
}

impl BezierCurve {
    pub fn new(control_points: Vec<Point>) -> Result<Self> {
        if control_points.is_empty() {
            return Err(ArcError::InvalidArgument(
                "a Bézier curve needs at least one control point".into(),
            ));
        }
        Ok(Self { control_points })
    }

    pub fn degree(&self) -> usize {
        self.control_points.len() - 1
    }

    pub fn control_points(&self) -> &[Point] {
        &self.control_points
    }

    /// De Casteljau evaluation. Parameters outside `[-1, 1]` extrapolate.
    pub fn eval(&self, t: f64) -> Point {
        let lambda = 0.5 * (1.0 + t);
        let mut work = self.control_points.clone();
        for level in (1..work.len()).rev() {
            for i in 0..level {
                work[i] = work[i].lerp(work[i + 1], lambda);
            }
        }
        work[0]
    }

    /// Hodograph with respect to `t` (note the factor `n / 2` from the
    /// `[-1, 1]` domain).
    pub fn derivative(&self) -> BezierCurve {
        let n = self.degree();
        if n == 0 {
            return BezierCurve {
                control_points: vec![Point::new(0.0, 0.0)],
            };
        }
        let k = n as f64 / 2.0;
        let points = self
            .control_points
            .windows(2)
            .map(|w| Point::new(k * (w[1].x - w[0].x), k * (w[1].y - w[0].y)))
            .collect();
        BezierCurve {
            control_points: points,
        }
    }

    /// Signed curvature, counterclockwise positive.
    pub fn signed_curvature(&self, t: f64) -> f64 {
        let d1 = self.derivative();
        let d2 = d1.derivative();
        let v = d1.eval(t);
        let a = d2.eval(t);
        v.cross(a) / v.norm().powi(3)
    }

    /// Power-basis coefficients (constant first) of the two coordinates.
    pub fn power_coefficients(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.degree();
        let mut xs = vec![0.0; n + 1];
        let mut ys = vec![0.0; n + 1];
        for (i, b) in self.control_points.iter().enumerate() {
            let basis = bernstein_power_coefficients(n, i);
            for (k, w) in basis.iter().enumerate() {
                xs[k] += w * b.x;
                ys[k] += w * b.y;
            }
        }
        (xs, ys)
    }
}

/// Power-basis coefficients of `B_i^n` on `[-1, 1]`.
fn bernstein_power_coefficients(n: usize, i: usize) -> Vec<f64> {
    // C(n,i) / 2^n * (1+t)^i * (1-t)^(n-i)
    let mut coeffs = vec![binomial(n, i) / 2f64.powi(n as i32)];
    for factor in std::iter::repeat_n(1.0, i).chain(std::iter::repeat_n(-1.0, n - i)) {
        let mut next = vec![0.0; coeffs.len() + 1];
        for (k, &c) in coeffs.iter().enumerate() {
            next[k] += c;
            next[k + 1] += factor * c;
        }
        coeffs = next;
    }
    coeffs
}

/// Builds the symmetric control polygon of `case` from its free parameters.
pub fn control_points(
    arc: &CircularArc,
    case: CaseId,
    params: &SolverParams,
) -> Result<BezierCurve> {
    let (c, s) = (arc.cos(), arc.sin());
    let (b0, bn) = arc.endpoints();
    let xi = params.xi;
    // G1 inner control points: endpoint plus xi along the unit tangent.
    let tangent_lo = Point::new(c + xi * s, -s + xi * c);
    let tangent_hi = Point::new(c + xi * s, s - xi * c);
    let points = match case.family {
        Family::QuadG0 => vec![b0, Point::new(xi, 0.0), bn],
        Family::CubicG1 => vec![b0, tangent_lo, tangent_hi, bn],
        Family::QuarticG2 => {
            let mid = if c == 0.0 {
                if (xi - 0.75f64.sqrt()).abs() > 1e-12 {
                    return Err(ArcError::LimitCaseMismatch { xi });
                }
                match case.side {
                    Side::Inner => quartic_g2_inner_limit_abscissa(),
                    Side::Outer => quartic_g2_outer_limit_abscissa(),
                }
            } else {
                (3.0 - 4.0 * xi * xi) / (3.0 * c)
            };
            vec![b0, tangent_lo, Point::new(mid, 0.0), tangent_hi, bn]
        }
        Family::CubicG0 => {
            let eta = params.require_eta(case)?;
            vec![b0, Point::new(xi, -eta), Point::new(xi, eta), bn]
        }
        Family::QuarticG1 => {
            let eta = params.require_eta(case)?;
            vec![b0, tangent_lo, Point::new(eta, 0.0), tangent_hi, bn]
        }
    };
    BezierCurve::new(points)
}
