//! ULP distance helpers used by tolerance checks.

/// Spacing of binary64 values at `|x|`.
pub fn ulp(x: f64) -> f64 {
    let a = x.abs();
    if !a.is_finite() {
        return f64::NAN;
    }
    if a == 0.0 {
        return f64::from_bits(1);
    }
    let next = f64::from_bits(a.to_bits() + 1);
    next - a
}

/// `|a - b|` measured in ulps of the larger magnitude.
pub fn ulps_between(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    (a - b).abs() / ulp(a.abs().max(b.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neighbours_are_one_ulp_apart() {
        let x: f64 = 0.98014;
        let y = f64::from_bits(x.to_bits() + 1);
        assert_eq!(ulps_between(x, y), 1.0);
        assert_eq!(ulps_between(2.0, 2.0), 0.0);
        assert_eq!(ulp(1.0), f64::EPSILON);
    }
}
