//! The sharp constants: the threshold exponent `p0`, the exponent `alpha`,
//! the `beta` multipliers, and the closed-form endpoints of the sine-integral
//! and Catalan-constant enclosures.

use serde::{Deserialize, Serialize};

use crate::bounds::{f_ratio_at_half_pi, Kernel};
use crate::dd::DoubleDouble;
use crate::error::{domain, Error, Result};
use crate::real::{lit, Real};
use crate::ulp::ulps_between;

/// Output of the bracketing root solver.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Root<R> {
    pub value: R,
    pub residual: R,
    pub bracket_lo: R,
    pub bracket_hi: R,
    pub iterations: u32,
}

pub type RootResult = Root<f64>;

/// Bisection down to `tol`, then one secant step from the final bracket,
/// kept only if it stays strictly inside and does not worsen the residual.
pub fn bisect_secant<R: Real>(f: impl Fn(R) -> Result<R>, mut lo: R, mut hi: R, tol: f64) -> Result<Root<R>> {
    let mut f_lo = f(lo)?;
    let mut f_hi = f(hi)?;
    let sign = |v: R| v.to_f64().signum();
    if sign(f_lo) == sign(f_hi) || f_lo.to_f64() == 0.0 || f_hi.to_f64() == 0.0 {
        return Err(Error::NoSignChange { lo: lo.to_f64(), hi: hi.to_f64(), f_lo: f_lo.to_f64(), f_hi: f_hi.to_f64() });
    }
    let mut iterations = 0u32;
    let two = lit::<R>(2.0);
    while (hi - lo).to_f64() > tol && iterations < 400 {
        let mid = (lo + hi) / two;
        if !(mid > lo && mid < hi) {
            break;
        }
        let f_mid = f(mid)?;
        iterations += 1;
        if f_mid.to_f64() == 0.0 {
            // Exact hit: shrink the bracket around it so value stays interior.
            let q = (hi - lo) / lit(4.0);
            return Ok(Root { value: mid, residual: f_mid, bracket_lo: mid - q, bracket_hi: mid + q, iterations });
        }
        if sign(f_mid) == sign(f_lo) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    let mid = (lo + hi) / two;
    let f_mid = f(mid)?;
    let mut best = (mid, f_mid);
    let denom = f_hi - f_lo;
    if denom.to_f64() != 0.0 {
        let secant = hi - f_hi * (hi - lo) / denom;
        if secant > lo && secant < hi {
            let f_sec = f(secant)?;
            iterations += 1;
            if f_sec.abs() <= f_mid.abs() {
                best = (secant, f_sec);
            }
        }
    }
    Ok(Root { value: best.0, residual: best.1, bracket_lo: lo, bracket_hi: hi, iterations })
}

/// Root of `p -> f_p(pi/2) = ln(2/pi) - (1/p) ln cos(pi p / 2)` in `[1/3, 1/2]`.
pub fn solve_p0_in<R: Real>(tol: f64) -> Result<Root<R>> {
    if !(tol > 0.0) {
        return Err(domain("solve_p0", format!("tol = {tol} must be positive")));
    }
    let k = Kernel::default();
    let half_pi = R::frac_pi_2();
    bisect_secant(|p: R| k.f_p(p, half_pi), R::one() / lit(3.0), lit(0.5), tol)
}

/// Binary64 `p0`; `tol` must lie in `(0, 1e-6]`.
pub fn solve_p0(tol: f64) -> Result<RootResult> {
    if !(tol > 0.0 && tol <= 1e-6) {
        return Err(domain("solve_p0", format!("tol = {tol} not in (0, 1e-6]")));
    }
    solve_p0_in::<f64>(tol)
}

/// Every named constant, in one snapshot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Catalogue<R> {
    pub p0: R,
    pub alpha: R,
    pub beta_13_half: R,
    pub beta_13_quarter: R,
    pub beta_12_half: R,
    pub a2_lower: R,
    pub a2_upper: R,
    pub a31_lower: R,
    pub a31_upper: R,
    pub a32_lower: R,
    pub a32_upper: R,
}

pub type ConstantCatalogue = Catalogue<f64>;

impl<R: Real> Catalogue<R> {
    /// Closed forms evaluated in `R`, with a precomputed `p0`.
    pub fn closed_forms(p0: R) -> Self {
        let c = lit::<R>;
        let pi = R::pi();
        let sqrt3 = c(3.0).sqrt();
        let ln3 = c(3.0).ln();
        let ln_pi = pi.ln();
        let ln2 = c(2.0).ln();
        let a2_core = c(2.0) * pi + c(9.0) * sqrt3 + c(22.0);
        let three_sqrt3_minus_5 = c(3.0) * sqrt3 - c(5.0);
        let four_plus_3ln3 = c(4.0) + c(3.0) * ln3;
        let ln_1_sqrt3 = (R::one() + sqrt3).ln();
        Self {
            p0,
            alpha: c(2.0) * (ln_pi - ln2) / (c(4.0).ln() - ln3),
            beta_13_half: c(16.0) * sqrt3 / (c(9.0) * pi),
            beta_13_quarter: c(16.0) * three_sqrt3_minus_5 / pi,
            beta_12_half: c(4.0) / pi,
            a2_lower: three_sqrt3_minus_5 * a2_core / (c(2.0) * pi),
            a2_upper: a2_core / c(32.0),
            a31_lower: four_plus_3ln3 / c(8.0),
            a31_upper: c(3.0) * sqrt3 * pi / c(128.0) * four_plus_3ln3,
            a32_lower: c(8.0) * sqrt3 / c(9.0) * ln_1_sqrt3 - (c(40.0) - c(22.0) * sqrt3) / c(3.0),
            a32_upper: pi * ((c(9.0) + c(5.0) * sqrt3) / c(36.0) * ln_1_sqrt3 - (R::one() + c(5.0) * sqrt3) / c(48.0)),
        }
    }

    pub fn map<S>(&self, f: impl Fn(R) -> S) -> Catalogue<S> {
        Catalogue {
            p0: f(self.p0),
            alpha: f(self.alpha),
            beta_13_half: f(self.beta_13_half),
            beta_13_quarter: f(self.beta_13_quarter),
            beta_12_half: f(self.beta_12_half),
            a2_lower: f(self.a2_lower),
            a2_upper: f(self.a2_upper),
            a31_lower: f(self.a31_lower),
            a31_upper: f(self.a31_upper),
            a32_lower: f(self.a32_lower),
            a32_upper: f(self.a32_upper),
        }
    }

    pub fn named(&self) -> [(&'static str, R); 11] {
        [
            ("p0", self.p0),
            ("alpha", self.alpha),
            ("beta_13_half", self.beta_13_half),
            ("beta_13_quarter", self.beta_13_quarter),
            ("beta_12_half", self.beta_12_half),
            ("a2_lower", self.a2_lower),
            ("a2_upper", self.a2_upper),
            ("a31_lower", self.a31_lower),
            ("a31_upper", self.a31_upper),
            ("a32_lower", self.a32_lower),
            ("a32_upper", self.a32_upper),
        ]
    }
}

/// Binary64 catalogue with `p0` solved live at `1e-13`.
pub fn catalogue() -> ConstantCatalogue {
    let p0 = solve_p0(1e-13).map(|r| r.value).unwrap_or(f64::NAN);
    Catalogue::closed_forms(p0)
}

/// Double-double catalogue with `p0` solved live at `1e-28`.
pub fn oracle_catalogue() -> Result<Catalogue<DoubleDouble>> {
    let p0 = solve_p0_in::<DoubleDouble>(1e-28)?.value;
    Ok(Catalogue::closed_forms(p0))
}

/// One closed-form versus recomputed pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub name: String,
    pub closed_form: f64,
    pub recomputed: f64,
    pub abs_diff: f64,
    pub ulps: f64,
    pub within_tolerance: bool,
}

pub const CONSISTENCY_ULPS: f64 = 8.0;

/// Recomputes the closed-form constants through the general evaluators.
/// Mismatches are reported, not raised.
pub fn consistency_check() -> Vec<Discrepancy> {
    let cat = catalogue();
    let k = Kernel::default();
    let half_pi = std::f64::consts::FRAC_PI_2;
    let quarter_pi = std::f64::consts::FRAC_PI_4;
    let third = 1.0 / 3.0;
    let mut rows = Vec::new();
    let mut push = |name: &str, closed: f64, recomputed: Result<f64>, tol_ulps: f64| {
        let recomputed = recomputed.unwrap_or(f64::NAN);
        let ulps = ulps_between(closed, recomputed);
        rows.push(Discrepancy {
            name: name.to_string(),
            closed_form: closed,
            recomputed,
            abs_diff: (closed - recomputed).abs(),
            ulps,
            within_tolerance: ulps <= tol_ulps,
        });
    };
    push("beta_13_half", cat.beta_13_half, k.beta(third, half_pi), CONSISTENCY_ULPS);
    push("beta_13_quarter", cat.beta_13_quarter, k.beta(third, quarter_pi), CONSISTENCY_ULPS);
    push("beta_12_half", cat.beta_12_half, k.beta(0.5, half_pi), CONSISTENCY_ULPS);
    push("alpha", cat.alpha, Ok(f_ratio_at_half_pi(third)), CONSISTENCY_ULPS);
    // beta(p0, pi/2) = 1 restates f_{p0}(pi/2) = 0
    let b = k.beta(cat.p0, half_pi);
    let ok = b.as_ref().map(|v| (v - 1.0).abs() <= 1e-10).unwrap_or(false);
    rows.push(Discrepancy {
        name: "beta_p0_half".into(),
        closed_form: 1.0,
        recomputed: *b.as_ref().unwrap_or(&f64::NAN),
        abs_diff: (b.clone().unwrap_or(f64::NAN) - 1.0).abs(),
        ulps: ulps_between(1.0, b.unwrap_or(f64::NAN)),
        within_tolerance: ok,
    });
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dd::DoubleDouble;

    #[test]
    fn p0_solves_and_stays_bracketed() {
        let r = solve_p0(1e-13).unwrap();
        assert!(r.bracket_lo < r.value && r.value < r.bracket_hi);
        assert!(r.residual.abs() <= 1e-12);
        assert!(r.value > 1.0 / 3.0 && r.value < 0.5);
    }

    #[test]
    fn p0_tolerance_is_validated() {
        assert!(solve_p0(0.0).is_err());
        assert!(solve_p0(1e-3).is_err());
    }

    #[test]
    fn dd_root_agrees_with_f64() {
        let r = solve_p0_in::<DoubleDouble>(1e-28).unwrap();
        let f = solve_p0(1e-13).unwrap();
        assert!((r.value.to_f64() - f.value).abs() < 1e-15);
        assert!(r.residual.abs().to_f64() < 1e-27);
    }

    #[test]
    fn no_sign_change_is_an_error() {
        let e = bisect_secant(|x: f64| Ok(x * x + 1.0), 0.0, 1.0, 1e-10).unwrap_err();
        assert!(matches!(e, Error::NoSignChange { .. }));
    }

    #[test]
    fn enclosure_endpoints_are_ordered() {
        let c = catalogue();
        assert!(c.a2_lower < c.a2_upper);
        assert!(c.a31_lower < c.a31_upper);
        assert!(c.a32_lower < c.a32_upper);
        assert!(c.a32_upper - c.a32_lower < c.a31_upper - c.a31_lower);
    }

    #[test]
    fn consistency_rows_all_pass() {
        for row in consistency_check() {
            assert!(row.within_tolerance, "{row:?}");
        }
    }
}
