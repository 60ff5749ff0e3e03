//! Real roots of low-degree polynomials and of bracketed scalar functions.
//!
//! Everything here works on sign-change brackets. [`solve_bracketed`] is a
//! safeguarded Newton iteration that falls back to bisection whenever the
//! Newton step leaves the current bracket or stops contracting, so it always
//! converges. [`isolate_real_roots`] finds every real root of a polynomial of
//! degree at most eight on an open interval by recursively splitting the
//! interval at the critical points of the polynomial.

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{ArcError, Result};

/// Coefficients below this magnitude are dropped from the top of a polynomial.
const TRIM_LIMIT: f64 = 1e-300;

/// Relative tolerance for reporting a critical point as a multiple root.
pub const MULTIPLE_ROOT_TOL: f64 = 1e-10;

/// A polynomial in the power basis, constant coefficient first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerPolynomial {
    coeffs: Vec<f64>,
}

impl PowerPolynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.last().is_some_and(|c| c.abs() < TRIM_LIMIT) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(value: f64) -> Self {
        Self::new(vec![value])
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[f64]) -> Self {
        roots.iter().fold(Self::constant(1.0), |acc, &r| {
            &acc * &Self::new(vec![-r, 1.0])
        })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc.mul_add(t, c))
    }

    /// Value and first derivative by a single Horner pass.
    pub fn eval_with_derivative(&self, t: f64) -> (f64, f64) {
        let mut value = 0.0f64;
        let mut slope = 0.0f64;
        for &c in self.coeffs.iter().rev() {
            slope = slope.mul_add(t, value);
            value = value.mul_add(t, c);
        }
        (value, slope)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| k as f64 * c)
                .collect(),
        )
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Upper bound for `|p(t)|` with `|t| <= max(1, |lo|, |hi|)`; used as the
    /// reference magnitude for root tolerances.
    pub fn scale_on(&self, lo: f64, hi: f64) -> f64 {
        let m = lo.abs().max(hi.abs()).max(1.0);
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * m + c.abs())
    }
}

impl Add for &PowerPolynomial {
    type Output = PowerPolynomial;

    fn add(self, rhs: &PowerPolynomial) -> PowerPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        PowerPolynomial::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or(0.0)
                        + rhs.coeffs.get(k).copied().unwrap_or(0.0)
                })
                .collect(),
        )
    }
}

impl Sub for &PowerPolynomial {
    type Output = PowerPolynomial;

    fn sub(self, rhs: &PowerPolynomial) -> PowerPolynomial {
        self + &rhs.scaled(-1.0)
    }
}

impl Mul for &PowerPolynomial {
    type Output = PowerPolynomial;

    fn mul(self, rhs: &PowerPolynomial) -> PowerPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return PowerPolynomial::zero();
        }
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = a.mul_add(b, out[i + j]);
            }
        }
        PowerPolynomial::new(out)
    }
}

/// An interval on which a continuous function changes sign (or vanishes at
/// an endpoint).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        let valid = lo < hi
            && f_lo.is_finite()
            && f_hi.is_finite()
            && (f_lo <= 0.0 && f_hi >= 0.0 || f_lo >= 0.0 && f_hi <= 0.0);
        if !valid {
            return Err(ArcError::InvalidBracket { lo, hi, f_lo, f_hi });
        }
        Ok(Self { lo, hi, f_lo, f_hi })
    }

    /// Evaluates `f` at both ends and validates the sign change.
    pub fn from_fn(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, f(lo), f(hi))
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Root of `f` inside `bracket`, where `f` returns `(value, derivative)`.
///
/// Stops once `|f(r)| <= tol * (1 + max(|f(lo)|, |f(hi)|))` or the bracket has
/// shrunk to `1e-15 * max(1, |r|)`.
pub fn solve_bracketed<F>(f: F, bracket: Bracket, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> (f64, f64),
{
    let Bracket {
        mut lo,
        mut hi,
        mut f_lo,
        mut f_hi,
    } = Bracket::new(bracket.lo, bracket.hi, bracket.f_lo, bracket.f_hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    let threshold = tol * (1.0 + f_lo.abs().max(f_hi.abs()));
    let mut x = 0.5 * (lo + hi);
    let mut step_before_last = hi - lo;
    let mut last_step = step_before_last;

    // 64 bisections already exhaust f64 resolution; the cap only matters if
    // `f` misbehaves (NaN), and then the best endpoint is returned.
    for _ in 0..400 {
        let (fx, dfx) = f(x);
        if fx == 0.0 || fx.abs() <= threshold {
            return Ok(x);
        }
        if (fx < 0.0) == (f_lo < 0.0) {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
        if hi - lo <= 1e-15 * x.abs().max(1.0) {
            break;
        }
        let newton = x - fx / dfx;
        let contracting = (2.0 * fx).abs() <= (step_before_last * dfx).abs();
        step_before_last = last_step;
        if dfx != 0.0 && newton > lo && newton < hi && contracting {
            last_step = (newton - x).abs();
            x = newton;
        } else {
            last_step = 0.5 * (hi - lo);
            x = lo + last_step;
        }
    }
    Ok(if f_lo.abs() <= f_hi.abs() { lo } else { hi })
}

/// Solves on `[lo, hi]` after widening each end by `1e-12 * max(1, |end|)`.
///
/// The widening keeps a root that sits exactly on a rounded interval endpoint
/// inside the bracket. Falls back to the unwidened interval when the widened
/// one has no sign change.
pub fn solve_widened<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> (f64, f64),
{
    let wlo = lo - 1e-12 * lo.abs().max(1.0);
    let whi = hi + 1e-12 * hi.abs().max(1.0);
    let bracket = Bracket::new(wlo, whi, f(wlo).0, f(whi).0)
        .or_else(|_| Bracket::new(lo, hi, f(lo).0, f(hi).0))?;
    solve_bracketed(f, bracket, tol)
}

/// All real roots of `poly` in the open interval `(lo, hi)`, ascending.
///
/// Roots of odd multiplicity are found as sign changes between consecutive
/// critical points; roots of even multiplicity are critical points where
/// `|poly|` is below `1e-10` times the
/// coefficient scale at that point and are reported once.
pub fn isolate_real_roots(poly: &PowerPolynomial, lo: f64, hi: f64) -> Vec<f64> {
    if !(lo < hi) {
        return Vec::new();
    }
    match poly.degree() {
        None | Some(0) => Vec::new(),
        Some(1) => {
            let c = poly.coeffs();
            let r = -c[0] / c[1];
            if r > lo && r < hi {
                vec![r]
            } else {
                Vec::new()
            }
        }
        Some(_) => {
            let critical = isolate_real_roots(&poly.derivative(), lo, hi);

            // Knots are [lo, critical..., hi]; a critical point that is
            // practically a root counts as an exact zero so the sign test on
            // its neighbouring intervals cannot report it a second time.
            let mut knots = Vec::with_capacity(critical.len() + 2);
            knots.push((lo, poly.eval(lo), false));
            for &t in &critical {
                let v = poly.eval(t);
                let multiple = v.abs() <= MULTIPLE_ROOT_TOL * poly.scale_on(t, t);
                knots.push((t, if multiple { 0.0 } else { v }, multiple));
            }
            knots.push((hi, poly.eval(hi), false));

            let mut roots = Vec::new();
            for pair in knots.windows(2) {
                let (a, fa, _) = pair[0];
                let (b, fb, b_multiple) = pair[1];
                if fa * fb < 0.0 {
                    let bracket = Bracket {
                        lo: a,
                        hi: b,
                        f_lo: fa,
                        f_hi: fb,
                    };
                    if let Ok(r) = solve_bracketed(|t| poly.eval_with_derivative(t), bracket, 0.0) {
                        roots.push(r);
                    }
                }
                if b_multiple {
                    roots.push(b);
                }
            }
            roots
        }
    }
}
