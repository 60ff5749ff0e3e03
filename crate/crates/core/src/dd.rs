//! Double-double helpers for the closed-form univariate polynomials.
//!
//! The bracketing polynomials of the cubic G0, quartic G1 and quartic G2
//! constructions take values of order `(1 - c)^3` or smaller at their bracket
//! ends, far below the rounding noise of a binary64 Horner pass once the arc
//! is small. Their coefficients are therefore formed and evaluated with
//! roughly 106 bits and rounded only at the end.

pub(crate) use twofloat::TwoFloat as Dd;

pub(crate) fn dd(x: f64) -> Dd {
    Dd::from(x)
}

pub(crate) fn sqrt2() -> Dd {
    dd(2.0).sqrt()
}

/// `sqrt(1 - c^2)` formed as `sqrt((1 - c)(1 + c))`.
pub(crate) fn sine_of(c: f64) -> Dd {
    ((dd(1.0) - c) * (dd(1.0) + c)).sqrt()
}

/// Value and derivative of `sum coeffs[k] x^k`.
pub(crate) fn horner(coeffs: &[Dd], x: Dd) -> (Dd, Dd) {
    let mut value = dd(0.0);
    let mut slope = dd(0.0);
    for &c in coeffs.iter().rev() {
        slope = slope * x + value;
        value = value * x + c;
    }
    (value, slope)
}

/// [`horner`] at an `f64` point, rounded back to `f64`.
pub(crate) fn horner_f64(coeffs: &[Dd], x: f64) -> (f64, f64) {
    let (v, d) = horner(coeffs, dd(x));
    (v.into(), d.into())
}
