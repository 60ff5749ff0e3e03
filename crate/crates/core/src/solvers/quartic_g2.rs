//! Quartic G2: end tangents and curvatures interpolated, one free `xi`.
//!
//! With `psi(t, xi) = (t^2-1)^3 / (64 c^2) * (16 (xi-a1)^2 (xi-a2)^2 t^2
//! - 16 (xi-b1)(xi-b2)(xi-b3)(xi-b4))` the inner optimum is `xi = b3`, which
//! makes `t = 0` a double zero. The outer optimum is the zero of
//! `td(xi) = psi'''(1, xi)` on `[d2, b3]`.

use serde::{Deserialize, Serialize};

use super::{finish, ApproximantResult, BracketValues};
use crate::arc::{CaseId, CircularArc, Family, Side, SolverParams};
use crate::dd::{dd, horner, horner_f64, sine_of, Dd};
use crate::error::{ArcError, Result};
use crate::roots::solve_widened;

/// Closed-form constants of the quartic G2 error polynomial.
///
/// `beta*` are the zeros of `psi(0, .)`, `alpha*` the double zeros of its
/// leading coefficient, `gamma*` the zeros of `d psi(0, .) / d xi`, and
/// `delta*` the critical points of `td`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuarticG2Roots {
    pub alpha1: f64,
    pub alpha2: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub beta3: f64,
    pub beta4: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma3: f64,
    pub delta1: f64,
    pub delta2: f64,
}

impl QuarticG2Roots {
    /// The chain `b2 <= g2 <= d2 <= b3 <= a2 <= g3 <= b4`.
    pub fn chain(&self) -> [f64; 7] {
        [
            self.beta2,
            self.gamma2,
            self.delta2,
            self.beta3,
            self.alpha2,
            self.gamma3,
            self.beta4,
        ]
    }

    /// True when the ordering chain holds and `a1, b1, g1, d1 <= 0`.
    pub fn ordering_holds(&self) -> bool {
        let chain = self.chain();
        chain.windows(2).all(|w| w[0] <= w[1])
            && [self.alpha1, self.beta1, self.gamma1, self.delta1]
                .iter()
                .all(|&x| x <= 0.0)
    }
}

struct RootsDd {
    alpha1: Dd,
    alpha2: Dd,
    beta1: Dd,
    beta2: Dd,
    beta3: Dd,
    beta4: Dd,
    gamma1: Dd,
    gamma2: Dd,
    gamma3: Dd,
    delta1: Dd,
    delta2: Dd,
}

fn roots_dd(c: f64) -> RootsDd {
    let s = sine_of(c);
    let cd = dd(c);
    let one = dd(1.0);
    let cs = cd * s;
    let c2 = cd * cd;
    let c4 = c2 * c2;
    // 3 -+ 8c + 6c^2 - c^4 = (1 -+ c)^3 (3 +- c)
    let minus = ((one - cd) * (one - cd) * (one - cd) * (dd(3.0) + cd)).sqrt();
    let plus = ((one + cd) * (one + cd) * (one + cd) * (dd(3.0) - cd)).sqrt();
    let r3 = (dd(3.0) + c2).sqrt();
    let g = (dd(3.0) + c2 * 6.0 - c4).sqrt();
    let d = (dd(9.0) - c2 * 2.0 - c4 * 3.0).sqrt();
    RootsDd {
        alpha1: -(s * (r3 + cd)) / 2.0,
        alpha2: s * (r3 - cd) / 2.0,
        beta1: (cs - plus) / 2.0,
        beta2: (cs - minus) / 2.0,
        beta3: (cs + minus) / 2.0,
        beta4: (cs + plus) / 2.0,
        gamma1: (cs - g) / 2.0,
        gamma2: cs / 2.0,
        gamma3: (cs + g) / 2.0,
        delta1: (-cd * 2.0 - d) / (s * 6.0),
        delta2: (-cd * 2.0 + d) / (s * 6.0),
    }
}

pub fn quartic_g2_roots(arc: &CircularArc) -> QuarticG2Roots {
    let r = roots_dd(arc.cos());
    QuarticG2Roots {
        alpha1: r.alpha1.into(),
        alpha2: r.alpha2.into(),
        beta1: r.beta1.into(),
        beta2: r.beta2.into(),
        beta3: r.beta3.into(),
        beta4: r.beta4.into(),
        gamma1: r.gamma1.into(),
        gamma2: r.gamma2.into(),
        gamma3: r.gamma3.into(),
        delta1: r.delta1.into(),
        delta2: r.delta2.into(),
    }
}

/// Coefficients of `c * td(xi)`, constant first.
fn scaled_td_coeffs(c: f64) -> [Dd; 4] {
    let s = sine_of(c);
    let cd = dd(c);
    let c2 = cd * cd;
    [
        cd * (dd(1.0) - c2) * 12.0,
        -(s * (dd(3.0) + c2)) * 12.0,
        cd * 48.0,
        s * 48.0,
    ]
}

/// `c * psi'''(1, xi)` and its derivative in `xi`. Scaling by `c` keeps the
/// function finite at `c = 0`.
pub fn scaled_td(arc: &CircularArc, xi: f64) -> (f64, f64) {
    horner_f64(&scaled_td_coeffs(arc.cos()), xi)
}

/// `c * td` at `delta2` and `beta3`, in double-double; the outer root lies
/// between them.
pub fn td_bracket(arc: &CircularArc) -> BracketValues {
    let r = roots_dd(arc.cos());
    let coeffs = scaled_td_coeffs(arc.cos());
    BracketValues {
        lo: r.delta2.into(),
        hi: r.beta3.into(),
        f_lo: horner(&coeffs, r.delta2).0.into(),
        f_hi: horner(&coeffs, r.beta3).0.into(),
    }
}

pub fn solve_quartic_g2(arc: &CircularArc, side: Side) -> Result<ApproximantResult> {
    let case = CaseId {
        family: Family::QuarticG2,
        side,
    };
    let c = arc.cos();
    let roots = quartic_g2_roots(arc);
    if !roots.ordering_holds() {
        return Err(ArcError::SolverInvariant {
            case,
            detail: format!("root ordering fails at c = {c}: {roots:?}"),
        });
    }
    let limit_xi = 0.75f64.sqrt();
    match side {
        Side::Inner => {
            let xi = if c == 0.0 { limit_xi } else { roots.beta3 };
            finish(arc, case, SolverParams::one(xi), &[0.0])
        }
        Side::Outer => {
            let xi = if c == 0.0 {
                limit_xi
            } else {
                let bracket = td_bracket(arc);
                if !(bracket.f_lo < 0.0 && bracket.f_hi > 0.0) {
                    return Err(ArcError::SolverInvariant {
                        case,
                        detail: format!("td does not change sign on [d2, b3]: {bracket:?}"),
                    });
                }
                solve_widened(|x| scaled_td(arc, x), bracket.lo, bracket.hi, 1e-15)?
            };
            finish(arc, case, SolverParams::one(xi), &[])
        }
    }
}
