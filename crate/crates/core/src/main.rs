use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use arcfit::oracle::{default_grid, oracle_cross_check_with, OracleReport};
use arcfit::report::{
    build_table, parse_angle, render_svg, render_table_csv, render_table_text, sci, PlotKind,
    ResultDocument, TableId, TableSpec, DEFAULT_ANGLES,
};
use arcfit::{solve, ArcError, CaseId, CircularArc, Side};

const EXIT_USAGE: u8 = 1;
const EXIT_NO_APPROXIMANT: u8 = 2;
const EXIT_VERIFY_FAILED: u8 = 3;

/// Optimal inner and outer Bezier approximants of circular arcs.
#[derive(Parser)]
#[command(name = "arcfit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one optimal approximant.
    Solve {
        #[command(flatten)]
        sel: Selection,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Regenerate a table of optimal parameters and errors.
    Table {
        /// G20, G30, G31, G41 or G42.
        #[arg(long)]
        id: String,
        /// Comma-separated half-angles; defaults to pi/2 ... pi/12.
        #[arg(long, value_delimiter = ',')]
        angles: Option<Vec<String>>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write an SVG of the curve and/or its radial error.
    Plot {
        #[command(flatten)]
        sel: Selection,
        #[arg(long, default_value = "both")]
        what: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Cross-check the solver against the brute-force oracle.
    Verify {
        #[command(flatten)]
        sel: OptionalSelection,
        /// Every case at every default table angle.
        #[arg(long)]
        all: bool,
        /// Grid points per parameter.
        #[arg(long)]
        grid: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct Selection {
    /// Half-angle: radians, `pi/K` or `K*pi/M`.
    #[arg(long)]
    angle: String,
    #[arg(long)]
    degree: u8,
    #[arg(long)]
    continuity: u8,
    #[arg(long)]
    side: Side,
}

#[derive(Args)]
struct OptionalSelection {
    #[arg(long)]
    angle: Option<String>,
    #[arg(long)]
    degree: Option<u8>,
    #[arg(long)]
    continuity: Option<u8>,
    #[arg(long)]
    side: Option<Side>,
}

enum Failure {
    Usage(String),
    NoApproximant(String),
    Verify(String),
    Other(String),
}

impl Failure {
    fn from_arc(e: ArcError) -> Self {
        match e {
            ArcError::NoApproximant { .. } => Failure::NoApproximant(e.to_string()),
            ArcError::InvalidAngle(_)
            | ArcError::InvalidArgument(_)
            | ArcError::UnsupportedCase { .. } => Failure::Usage(e.to_string()),
            ArcError::OptimalityViolation { .. } => Failure::Verify(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

/// Writes to stdout, staying quiet when the reader has gone away.
fn emit(text: &str) {
    let mut out = io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|()| out.flush());
}

fn resolve(
    angle: &str,
    degree: u8,
    continuity: u8,
    side: Side,
) -> Result<(CircularArc, CaseId), Failure> {
    let phi = parse_angle(angle).map_err(Failure::from_arc)?;
    let arc = CircularArc::new(phi).map_err(Failure::from_arc)?;
    let case = CaseId::new(degree, continuity, side).map_err(Failure::from_arc)?;
    Ok((arc, case))
}

fn run_solve(sel: Selection, format: Format) -> Result<(), Failure> {
    let (arc, case) = resolve(&sel.angle, sel.degree, sel.continuity, sel.side)?;
    let result = solve(&arc, case).map_err(Failure::from_arc)?;
    let doc = ResultDocument::from_result(&result);
    match format {
        Format::Json => emit(&format!("{}\n", doc.to_json())),
        Format::Csv => emit(&doc.to_csv()),
        Format::Text => emit(&doc.to_text()),
    }
    Ok(())
}

fn run_table(id: &str, angles: Option<Vec<String>>, format: Format) -> Result<(), Failure> {
    let id: TableId = id.parse().map_err(Failure::from_arc)?;
    let spec = match angles {
        Some(a) => TableSpec::with_angles(id, &a).map_err(Failure::from_arc)?,
        None => TableSpec::new(id),
    };
    let rows = build_table(&spec).map_err(Failure::from_arc)?;
    match format {
        Format::Text => emit(&render_table_text(id, &rows)),
        Format::Csv => emit(&render_table_csv(id, &rows)),
        Format::Json => {
            let json: Vec<_> = rows
                .iter()
                .map(|r| {
                    let cell = |c: Option<arcfit::report::TableCell>| {
                        c.map(|c| serde_json::json!({"params": c.params, "error": c.error}))
                    };
                    serde_json::json!({
                        "angle": r.label,
                        "phi": r.phi,
                        "outer": cell(r.outer),
                        "inner": cell(r.inner),
                    })
                })
                .collect();
            emit(&format!(
                "{}\n",
                serde_json::to_string_pretty(&json).expect("table rows serialize")
            ));
        }
    }
    Ok(())
}

fn run_plot(sel: Selection, what: &str, out: PathBuf) -> Result<(), Failure> {
    let kind: PlotKind = what.parse().map_err(Failure::from_arc)?;
    let (arc, case) = resolve(&sel.angle, sel.degree, sel.continuity, sel.side)?;
    let result = solve(&arc, case).map_err(Failure::from_arc)?;
    fs::write(&out, render_svg(&result, kind))
        .map_err(|e| Failure::Other(format!("cannot write {}: {e}", out.display())))?;
    emit(&format!("wrote {}\n", out.display()));
    Ok(())
}

fn describe(report: &OracleReport, label: &str) -> String {
    let status = if report.passed() { "PASS" } else { "FAIL" };
    match (report.solver_error, report.best_error_found) {
        (None, None) => format!(
            "{status} {} at {label}: empty feasible set confirms no approximant",
            report.case
        ),
        (solver, best) => format!(
            "{status} {} at {label}: solver {}, oracle {}, gap {}, grid {}, feasible {}, params {}",
            report.case,
            solver.map_or("none".into(), sci),
            best.map_or("none".into(), sci),
            report.gap.map_or("n/a".into(), |g| format!("{g:.3e}")),
            report.grid_n,
            report.feasible_count,
            report
                .best_params_found
                .map_or("none".into(), |p| match p.eta {
                    Some(eta) => format!("(xi, eta) = ({}, {eta})", p.xi),
                    None => format!("xi = {}", p.xi),
                }),
        ),
    }
}

fn run_verify(sel: OptionalSelection, all: bool, grid: Option<usize>) -> Result<(), Failure> {
    let mut jobs = Vec::new();
    if all {
        for case in CaseId::all() {
            for label in DEFAULT_ANGLES {
                jobs.push((label.to_string(), case));
            }
        }
    } else {
        let missing = |name: &str| Failure::Usage(format!("verify needs --{name} (or --all)"));
        let angle = sel.angle.ok_or_else(|| missing("angle"))?;
        let degree = sel.degree.ok_or_else(|| missing("degree"))?;
        let continuity = sel.continuity.ok_or_else(|| missing("continuity"))?;
        let side = sel.side.ok_or_else(|| missing("side"))?;
        let (_, case) = resolve(&angle, degree, continuity, side)?;
        jobs.push((angle, case));
    }
    let mut failures = 0;
    for (label, case) in &jobs {
        let arc = CircularArc::new(parse_angle(label).map_err(Failure::from_arc)?)
            .map_err(Failure::from_arc)?;
        let n = grid.unwrap_or_else(|| default_grid(*case));
        match oracle_cross_check_with(&arc, *case, n) {
            Ok(report) => emit(&format!("{}\n", describe(&report, label))),
            Err(e @ ArcError::OptimalityViolation { .. }) => {
                failures += 1;
                emit(&format!("FAIL {case} at {label}: {e}\n"));
            }
            Err(e) => return Err(Failure::from_arc(e)),
        }
    }
    emit(&format!(
        "{}/{} passed\n",
        jobs.len() - failures,
        jobs.len()
    ));
    if failures > 0 {
        return Err(Failure::Verify(format!(
            "{failures} verification failure(s)"
        )));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match cli.command {
        Command::Solve { sel, format } => run_solve(sel, format),
        Command::Table { id, angles, format } => run_table(&id, angles, format),
        Command::Plot { sel, what, out } => run_plot(sel, &what, out),
        Command::Verify { sel, all, grid } => run_verify(sel, all, grid),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::NoApproximant(m)) => {
            eprintln!("{m}");
            ExitCode::from(EXIT_NO_APPROXIMANT)
        }
        Err(Failure::Verify(m)) => {
            eprintln!("verification failed: {m}");
            ExitCode::from(EXIT_VERIFY_FAILED)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
