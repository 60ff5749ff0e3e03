//! Result documents, angle parsing, table regeneration and SVG plots.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arc::{CaseId, CircularArc, Family, Point, Side, SolverParams};
use crate::error::{ArcError, Result};
use crate::radial::radial_error;
use crate::solvers::{solve, ApproximantResult};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcSummary {
    pub phi: f64,
    pub c: f64,
    pub s: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaseSummary {
    pub degree: u8,
    pub continuity: u8,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateSummary {
    pub passed: bool,
    pub worst_violation: f64,
    pub sample_count: usize,
    pub max_abs_psi: f64,
}

/// Serializable view of an [`ApproximantResult`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub schema_version: String,
    pub arc: ArcSummary,
    pub case: CaseSummary,
    pub params: SolverParams,
    pub control_points: Vec<[f64; 2]>,
    pub max_radial_error: f64,
    pub error_locations: Vec<f64>,
    pub certificate: CertificateSummary,
    pub equioscillation_nodes: Vec<f64>,
}

impl ResultDocument {
    pub fn from_result(r: &ApproximantResult) -> Self {
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            arc: ArcSummary {
                phi: r.arc.phi(),
                c: r.arc.cos(),
                s: r.arc.sin(),
            },
            case: CaseSummary {
                degree: r.case.degree(),
                continuity: r.case.continuity(),
                side: r.case.side,
            },
            params: r.params,
            control_points: r
                .curve
                .control_points()
                .iter()
                .map(|p| [p.x, p.y])
                .collect(),
            max_radial_error: r.max_radial_error,
            error_locations: r.error_locations.clone(),
            certificate: CertificateSummary {
                passed: r.certificate.passed,
                worst_violation: r.certificate.worst_violation,
                sample_count: r.certificate.sample_count,
                max_abs_psi: r.certificate.max_abs_psi,
            },
            equioscillation_nodes: r.equioscillation_nodes.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("result documents always serialize")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "phi,degree,continuity,side,xi,eta,max_radial_error,certified,control_points\n",
        );
        let points = self
            .control_points
            .iter()
            .map(|[x, y]| format!("{x} {y}"))
            .collect::<Vec<_>>()
            .join(";");
        let eta = self.params.eta.map(|e| e.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{:e},{},{}",
            self.arc.phi,
            self.case.degree,
            self.case.continuity,
            self.case.side,
            self.params.xi,
            eta,
            self.max_radial_error,
            self.certificate.passed,
            points
        );
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "degree {} G{} {} approximant, phi = {}",
            self.case.degree, self.case.continuity, self.case.side, self.arc.phi
        );
        let _ = writeln!(out, "xi               = {}", sig(self.params.xi, 6));
        if let Some(eta) = self.params.eta {
            let _ = writeln!(out, "eta              = {}", sig(eta, 6));
        }
        let _ = writeln!(out, "max radial error = {:.2e}", self.max_radial_error);
        let _ = writeln!(out, "control points:");
        for [x, y] in &self.control_points {
            let _ = writeln!(out, "  ({x:.12}, {y:.12})");
        }
        let _ = writeln!(
            out,
            "one-sided: {} (worst violation {:.3e}, {} samples)",
            if self.certificate.passed { "yes" } else { "no" },
            self.certificate.worst_violation,
            self.certificate.sample_count
        );
        if !self.equioscillation_nodes.is_empty() {
            let nodes: Vec<String> = self
                .equioscillation_nodes
                .iter()
                .map(|t| format!("{t:.9}"))
                .collect();
            let _ = writeln!(out, "touch points: {}", nodes.join(", "));
        }
        out
    }
}

/// Parses `pi`, `pi/K`, `K*pi`, `K*pi/M` or plain radians, and checks the
/// result lies in `(0, pi/2]`.
pub fn parse_angle(text: &str) -> Result<f64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || ArcError::InvalidArgument(format!("cannot parse angle `{text}`"));
    let num = |t: &str| t.parse::<f64>().map_err(|_| bad());
    let lower = s.to_ascii_lowercase();
    let phi = match lower.find("pi") {
        None => num(&lower)?,
        Some(at) => {
            let head = &lower[..at];
            let tail = &lower[at + 2..];
            let factor = match head {
                "" => 1.0,
                h => num(h.strip_suffix('*').ok_or_else(bad)?)?,
            };
            let divisor = match tail {
                "" => 1.0,
                t => num(t.strip_prefix('/').ok_or_else(bad)?)?,
            };
            if factor == 1.0 && divisor == 2.0 {
                FRAC_PI_2
            } else {
                factor * PI / divisor
            }
        }
    };
    if !(phi > 0.0 && phi <= FRAC_PI_2) {
        return Err(ArcError::InvalidAngle(phi));
    }
    Ok(phi)
}

/// `x` with `digits` significant digits, trailing zeros removed.
pub fn sig(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (digits as i32 - 1 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

/// Errors in the style of the tables: three significant digits.
pub fn sci(x: f64) -> String {
    format!("{x:.2e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableId {
    G20,
    G30,
    G31,
    G41,
    G42,
}

impl TableId {
    pub const ALL: [TableId; 5] = [
        TableId::G20,
        TableId::G30,
        TableId::G31,
        TableId::G41,
        TableId::G42,
    ];

    pub fn family(self) -> Family {
        match self {
            TableId::G20 => Family::QuadG0,
            TableId::G30 => Family::CubicG0,
            TableId::G31 => Family::CubicG1,
            TableId::G41 => Family::QuarticG1,
            TableId::G42 => Family::QuarticG2,
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            TableId::G20 => "quadratic G0",
            TableId::G30 => "cubic G0",
            TableId::G31 => "cubic G1",
            TableId::G41 => "quartic G1",
            TableId::G42 => "quartic G2",
        }
    }
}

impl FromStr for TableId {
    type Err = ArcError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "G20" => Ok(TableId::G20),
            "G30" => Ok(TableId::G30),
            "G31" => Ok(TableId::G31),
            "G41" => Ok(TableId::G41),
            "G42" => Ok(TableId::G42),
            _ => Err(ArcError::InvalidArgument(format!(
                "unknown table `{s}` (expected G20, G30, G31, G41 or G42)"
            ))),
        }
    }
}

pub const DEFAULT_ANGLES: [&str; 6] = ["pi/2", "pi/3", "pi/4", "pi/6", "pi/8", "pi/12"];

#[derive(Debug, Clone, PartialEq)]
pub struct TableSpec {
    pub id: TableId,
    /// Row labels with their half-angles.
    pub angles: Vec<(String, f64)>,
}

impl TableSpec {
    pub fn new(id: TableId) -> Self {
        Self::with_angles(id, &DEFAULT_ANGLES).expect("default angles parse")
    }

    pub fn with_angles<S: AsRef<str>>(id: TableId, labels: &[S]) -> Result<Self> {
        let angles = labels
            .iter()
            .map(|l| Ok((l.as_ref().to_string(), parse_angle(l.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { id, angles })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableCell {
    pub params: SolverParams,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub label: String,
    pub phi: f64,
    /// `None` when no approximant exists.
    pub outer: Option<TableCell>,
    pub inner: Option<TableCell>,
}

fn cell(arc: &CircularArc, family: Family, side: Side) -> Result<Option<TableCell>> {
    match solve(arc, CaseId { family, side }) {
        Ok(r) => Ok(Some(TableCell {
            params: r.params,
            error: r.max_radial_error,
        })),
        Err(ArcError::NoApproximant { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn build_table(spec: &TableSpec) -> Result<Vec<TableRow>> {
    let family = spec.id.family();
    spec.angles
        .par_iter()
        .map(|(label, phi)| {
            let arc = CircularArc::new(*phi)?;
            Ok(TableRow {
                label: label.clone(),
                phi: *phi,
                outer: cell(&arc, family, Side::Outer)?,
                inner: cell(&arc, family, Side::Inner)?,
            })
        })
        .collect()
}

fn has_eta(id: TableId) -> bool {
    id.family().parameter_count() == 2
}

fn table_header(id: TableId) -> Vec<&'static str> {
    if has_eta(id) {
        vec![
            "phi", "xi_out", "eta_out", "err_out", "xi_in", "eta_in", "err_in",
        ]
    } else {
        vec!["phi", "xi_out", "err_out", "xi_in", "err_in"]
    }
}

fn row_cells(id: TableId, row: &TableRow, missing: &str) -> Vec<String> {
    let mut out = vec![row.label.clone()];
    for c in [row.outer, row.inner] {
        match c {
            Some(c) => {
                out.push(sig(c.params.xi, 6));
                if has_eta(id) {
                    out.push(sig(c.params.eta.unwrap_or(f64::NAN), 6));
                }
                out.push(sci(c.error));
            }
            None => {
                out.push(missing.to_string());
                if has_eta(id) {
                    out.push(String::new());
                }
                out.push(String::new());
            }
        }
    }
    out
}

pub const TABLE_FOOTNOTE: &str =
    "The unconstrained optimum columns (xi*, eta*) are not computed; only one-sided optima are shown.";

pub fn render_table_text(id: TableId, rows: &[TableRow]) -> String {
    let header: Vec<String> = table_header(id).iter().map(|s| s.to_string()).collect();
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| row_cells(id, r, "no approximant"))
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|j| {
            body.iter()
                .map(|r| r[j].len())
                .chain([header[j].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = format!("Optimal one-sided {} approximants\n", id.title());
    let _ = writeln!(out, "{}", line(&header));
    for r in &body {
        let _ = writeln!(out, "{}", line(r));
    }
    let _ = writeln!(out, "\n{TABLE_FOOTNOTE}");
    out
}

pub fn render_table_csv(id: TableId, rows: &[TableRow]) -> String {
    let mut out = table_header(id).join(",");
    out.push('\n');
    for r in rows {
        out.push_str(&row_cells(id, r, "").join(","));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlotKind {
    Curve,
    Error,
    Both,
}

impl FromStr for PlotKind {
    type Err = ArcError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "curve" => Ok(PlotKind::Curve),
            "error" => Ok(PlotKind::Error),
            "both" => Ok(PlotKind::Both),
            _ => Err(ArcError::InvalidArgument(format!(
                "unknown plot kind `{s}` (expected curve, error or both)"
            ))),
        }
    }
}

pub const ARC_SEGMENTS: usize = 720;
const PANEL: f64 = 400.0;
const MARGIN: f64 = 24.0;

fn polyline(points: &[(f64, f64)], style: &str) -> String {
    let coords = points
        .iter()
        .map(|(x, y)| format!("{x:.3},{y:.3}"))
        .collect::<Vec<_>>()
        .join(" ");
    format!("  <polyline fill=\"none\" {style} points=\"{coords}\"/>\n")
}

fn curve_panel(r: &ApproximantResult, dx: f64) -> String {
    let phi = r.arc.phi();
    let arc: Vec<Point> = (0..=ARC_SEGMENTS)
        .map(|k| {
            let a = -phi + 2.0 * phi * k as f64 / ARC_SEGMENTS as f64;
            Point {
                x: a.cos(),
                y: a.sin(),
            }
        })
        .collect();
    let curve: Vec<Point> = (0..=ARC_SEGMENTS)
        .map(|k| r.curve.eval(-1.0 + 2.0 * k as f64 / ARC_SEGMENTS as f64))
        .collect();
    let ctrl = r.curve.control_points();
    let all = arc.iter().chain(&curve).chain(ctrl);
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in all {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y0 = y0.min(p.y);
        y1 = y1.max(p.y);
    }
    let scale = (PANEL - 2.0 * MARGIN) / (x1 - x0).max(y1 - y0);
    let map = |p: &Point| {
        (
            dx + MARGIN + (p.x - x0) * scale,
            PANEL - MARGIN - (p.y - y0) * scale,
        )
    };
    let mut out = String::new();
    let pts = |ps: &[Point]| ps.iter().map(map).collect::<Vec<_>>();
    out += &polyline(&pts(ctrl), "stroke=\"#999999\" stroke-dasharray=\"4 3\"");
    for p in ctrl {
        let (x, y) = map(p);
        let _ = writeln!(
            out,
            "  <circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"3\" fill=\"#999999\"/>"
        );
    }
    out += &polyline(&pts(&arc), "stroke=\"#1f77b4\" stroke-width=\"1.5\"");
    out += &polyline(&pts(&curve), "stroke=\"#d62728\" stroke-width=\"1\"");
    out
}

fn error_panel(r: &ApproximantResult, dx: f64) -> String {
    let samples: Vec<(f64, f64)> = (0..=ARC_SEGMENTS)
        .map(|k| {
            let t = -1.0 + 2.0 * k as f64 / ARC_SEGMENTS as f64;
            (t, radial_error(r.psi.eval(t)).unwrap_or(f64::NAN))
        })
        .collect();
    let peak = r.max_radial_error.max(f64::MIN_POSITIVE);
    let half = PANEL / 2.0 - MARGIN;
    let map = |(t, e): (f64, f64)| {
        (
            dx + MARGIN + (t + 1.0) / 2.0 * (PANEL - 2.0 * MARGIN),
            PANEL / 2.0 - e / peak * half,
        )
    };
    let mut out = String::new();
    out += &polyline(
        &[map((-1.0, 0.0)), map((1.0, 0.0))],
        "stroke=\"#000000\" stroke-width=\"0.5\"",
    );
    let pts: Vec<(f64, f64)> = samples.into_iter().map(map).collect();
    out += &polyline(&pts, "stroke=\"#2ca02c\" stroke-width=\"1\"");
    let _ = writeln!(
        out,
        "  <text x=\"{:.3}\" y=\"{:.3}\" font-size=\"12\">max |psi_r| = {}</text>",
        dx + MARGIN,
        MARGIN * 0.75,
        sci(r.max_radial_error)
    );
    out
}

/// SVG 1.1 drawing of the arc, the curve and its control polygon, and/or
/// the radial error on `[-1, 1]`. Output depends only on `r` and `kind`.
pub fn render_svg(r: &ApproximantResult, kind: PlotKind) -> String {
    let panels: Vec<fn(&ApproximantResult, f64) -> String> = match kind {
        PlotKind::Curve => vec![curve_panel],
        PlotKind::Error => vec![error_panel],
        PlotKind::Both => vec![curve_panel, error_panel],
    };
    let width = PANEL * panels.len() as f64;
    let mut out = format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
         <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{PANEL}\" viewBox=\"0 0 {width} {PANEL}\">\n"
    );
    let _ = writeln!(
        out,
        "  <title>{} approximant, phi = {}</title>",
        r.case,
        r.arc.phi()
    );
    for (i, panel) in panels.iter().enumerate() {
        out += &panel(r, PANEL * i as f64);
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_forms() {
        assert_eq!(parse_angle("pi/2").unwrap(), FRAC_PI_2);
        assert_eq!(parse_angle("pi/3").unwrap(), PI / 3.0);
        assert_eq!(parse_angle("2*pi/9").unwrap(), 2.0 * PI / 9.0);
        assert_eq!(parse_angle("0.5").unwrap(), 0.5);
        assert!(parse_angle("pi").is_err());
        assert!(parse_angle("0").is_err());
        assert!(parse_angle("pie/3").is_err());
        assert!(parse_angle("3/pi").is_err());
    }

    #[test]
    fn significant_digits() {
        assert_eq!(sig(1.23456789, 6), "1.23457");
        assert_eq!(sig(2.0, 6), "2");
        assert_eq!(sig(0.0892572012, 6), "0.0892572");
        assert_eq!(sci(0.0318), "3.18e-2");
    }

    #[test]
    fn table_ids_parse() {
        for id in TableId::ALL {
            assert_eq!(format!("{id:?}").parse::<TableId>().unwrap(), id);
        }
        assert!("G22".parse::<TableId>().is_err());
    }
}
