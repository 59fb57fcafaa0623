//! Schwab-Borchardt and Seiffert means, and the margins of the two mean
//! inequalities that follow from the cosine bounds.

use serde::{Deserialize, Serialize};

use crate::bounds::Kernel;
use crate::error::{domain, Result};

/// Relative distance from the diagonal below which the series is used.
pub const DIAGONAL_BAND: f64 = 1e-6;

/// `SB(a, b)` for `a >= 0`, `b > 0`.
pub fn schwab_borchardt(a: f64, b: f64) -> Result<f64> {
    if !(a >= 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(domain("schwab_borchardt", format!("need a >= 0, b > 0, got ({a}, {b})")));
    }
    let k = Kernel::default();
    if (a - b).abs() < DIAGONAL_BAND * a.max(b) {
        let e = (b - a) / b;
        return Ok(b * (1.0 - e * (1.0 / 3.0 + e * (1.0 / 45.0 + e / 189.0))));
    }
    if a < b {
        // arccos(a/b) in half-angle form keeps digits when a is near b
        let angle = 2.0 * ((b - a) / (2.0 * b)).sqrt().asin();
        Ok(b * k.sinc(angle))
    } else {
        let u = 2.0 * ((a - b) / (2.0 * b)).sqrt().asinh();
        Ok(b * k.sinhc_and_bound(u)?.0)
    }
}

/// Seiffert mean with the arithmetic and geometric means of the same pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeiffertTriple {
    pub seiffert: f64,
    pub arithmetic: f64,
    pub geometric: f64,
    /// `arcsin(|a - b| / (a + b))`: `P/A = sinc(angle)` and `G/A = cos(angle)`.
    pub angle: f64,
}

pub fn seiffert_triple(a: f64, b: f64) -> Result<SeiffertTriple> {
    if !(a > 0.0 && b > 0.0) || a == b || !a.is_finite() || !b.is_finite() {
        return Err(domain("seiffert_triple", format!("need distinct a, b > 0, got ({a}, {b})")));
    }
    let diff = (a - b).abs();
    let angle = (diff / (a + b)).asin();
    Ok(SeiffertTriple { seiffert: diff / (2.0 * angle), arithmetic: 0.5 * (a + b), geometric: (a * b).sqrt(), angle })
}

/// `3t^3 - (4t^2 - 1) SB(t, 1)`; nonnegative, zero only at `t = 1`.
pub fn a4_margin(t: f64) -> Result<f64> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(domain("a4_margin", format!("t = {t} must be > 0")));
    }
    Ok(3.0 * t * t * t - (4.0 * t * t - 1.0) * schwab_borchardt(t, 1.0)?)
}

/// `(3/4)(A + G)^2 / (2G + A) - P`; positive for distinct pairs.
pub fn a5_margin(a: f64, b: f64) -> Result<f64> {
    let m = seiffert_triple(a, b)?;
    let (am, gm) = (m.arithmetic, m.geometric);
    Ok(0.75 * (am + gm) * (am + gm) / (2.0 * gm + am) - m.seiffert)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a5_margin_is_rational_bound_margin_scaled_by_mean() {
        let k = Kernel::default();
        for (a, b) in [(2.0, 1.0), (5.0, 0.3), (1.0, 40.0)] {
            let m = seiffert_triple(a, b).unwrap();
            let bound: f64 = crate::bounds::BoundExpr::Mb4Rational.eval(&k, m.angle).unwrap();
            let rational_margin = bound - k.sinc(m.angle);
            let scaled = a5_margin(a, b).unwrap() / m.arithmetic;
            assert!((scaled - rational_margin).abs() <= 1e-14, "({a}, {b}): {scaled} vs {rational_margin}");
        }
    }

    #[test]
    fn diagonal_is_identity() {
        for t in [0.5, 1.0, 2.0] {
            assert_eq!(schwab_borchardt(t, t).unwrap(), t);
        }
    }

    #[test]
    fn zero_first_argument() {
        let v = schwab_borchardt(0.0, 1.0).unwrap();
        assert!((v - 2.0 / std::f64::consts::PI).abs() <= 2.0 * f64::EPSILON, "{v}");
    }

    #[test]
    fn seam_is_continuous() {
        for a in [1.0 - 1e-8, 1.0 + 1e-8, 1.0 - 2e-6, 1.0 + 2e-6] {
            let inside = schwab_borchardt(a, 1.0).unwrap();
            assert!((inside - 1.0).abs() <= (a - 1.0).abs(), "a = {a}");
        }
        // across the band edge the slope is ~1/3
        let edge = 1.0 - DIAGONAL_BAND;
        let (a_in, a_out) = (edge * (1.0 + 1e-12), edge * (1.0 - 1e-12));
        let inside = schwab_borchardt(a_in, 1.0).unwrap();
        let outside = schwab_borchardt(a_out, 1.0).unwrap();
        let jump = (inside - outside) - (a_in - a_out) / 3.0;
        assert!(jump.abs() < 1e-15, "{inside} {outside}");
    }

    #[test]
    fn domains() {
        assert!(schwab_borchardt(-1.0, 1.0).is_err());
        assert!(schwab_borchardt(1.0, 0.0).is_err());
        assert!(seiffert_triple(1.0, 1.0).is_err());
        assert!(seiffert_triple(0.0, 1.0).is_err());
        assert!(a4_margin(0.0).is_err());
        assert!(a5_margin(2.0, 2.0).is_err());
    }

    #[test]
    fn a4_special_points() {
        assert_eq!(a4_margin(1.0).unwrap(), 0.0);
        assert_eq!(a4_margin(0.5).unwrap(), 3.0 / 8.0);
    }

    #[test]
    fn seiffert_is_symmetric() {
        assert_eq!(seiffert_triple(1.0, 2.0).unwrap(), seiffert_triple(2.0, 1.0).unwrap());
    }
}
