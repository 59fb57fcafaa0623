//! Bernoulli numbers and the cot/tan power series built on them, plus the
//! coefficient-level facts behind the monotonicity results: the `b_n/a_n`
//! step, the exponent function `g` and the sign of `p - g(n)`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{domain, range, Result};
use crate::real::Real;

/// Highest supported index `n` in `|B_{2n}|`.
pub const MAX_INDEX: u32 = 60;

/// A truncated power series evaluated at one point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesTruncation {
    /// Coefficients of the retained powers, in increasing order.
    pub coefficients: Vec<f64>,
    pub truncation_index: u32,
    /// Upper bound on the magnitude of the dropped tail.
    pub remainder_bound: f64,
    pub sum: f64,
}

struct Tables {
    /// |B_{2n}| for n = 0..=MAX_INDEX (index 0 holds B_0 = 1).
    bernoulli: Vec<BigRational>,
    /// cot: 2^{2n} |B_{2n}| / (2n)!
    cot: Vec<(f64, f64)>,
    /// tan: (2^{2n} - 1) 2^{2n} |B_{2n}| / (2n)!
    tan: Vec<(f64, f64)>,
    /// -ln(sin x / x) = sum l_n x^{2n}, l_n = 2^{2n-1} |B_{2n}| / (n (2n)!)
    ln_sinc: Vec<(f64, f64)>,
}

fn split(r: &BigRational) -> (f64, f64) {
    let hi = r.to_f64().unwrap_or(f64::NAN);
    let rest = r - BigRational::from_float(hi).unwrap_or_else(BigRational::zero);
    (hi, rest.to_f64().unwrap_or(0.0))
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn binomial_row(m: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 1..=m {
        let prev = row[(k - 1) as usize].clone();
        row.push(prev * BigInt::from(m - k + 1) / BigInt::from(k));
    }
    row
}

/// Exact B_0..=B_max via `sum_{k<=m} C(m+1, k) B_k = 0`.
fn bernoulli_all(max: u32) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(max as usize + 1);
    b.push(BigRational::one());
    for m in 1..=max {
        let row = binomial_row(m + 1);
        let mut acc = BigRational::zero();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                acc += BigRational::from_integer(row[k].clone()) * bk;
            }
        }
        b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

fn tables() -> &'static Tables {
    static TABLES: OnceLock<Tables> = OnceLock::new();
    TABLES.get_or_init(|| {
        let all = bernoulli_all(2 * (MAX_INDEX + 1));
        let bernoulli: Vec<BigRational> = (0..=MAX_INDEX + 1).map(|n| all[2 * n as usize].abs()).collect();
        let mut cot = vec![(0.0, 0.0)];
        let mut tan = vec![(0.0, 0.0)];
        let mut ln_sinc = vec![(0.0, 0.0)];
        for n in 1..=MAX_INDEX + 1 {
            let b = &bernoulli[n as usize];
            let pow4 = BigInt::one() << (2 * n);
            let fact = factorial(2 * n);
            let a = BigRational::new(pow4.clone(), fact.clone()) * b;
            let t = &a * BigRational::from_integer(pow4.clone() - BigInt::one());
            let l = BigRational::new(pow4, fact * BigInt::from(2 * n)) * b;
            cot.push(split(&a));
            tan.push(split(&t));
            ln_sinc.push(split(&l));
        }
        Tables { bernoulli, cot, tan, ln_sinc }
    })
}

fn check_index(op: &'static str, n: u32) -> Result<()> {
    if n == 0 || n > MAX_INDEX {
        return Err(range(op, format!("index {n} not in [1, {MAX_INDEX}]")));
    }
    Ok(())
}

/// `|B_{2n}|` exactly.
pub fn bernoulli_abs_exact(n: u32) -> Result<BigRational> {
    check_index("bernoulli_abs", n)?;
    Ok(tables().bernoulli[n as usize].clone())
}

/// `|B_{2n}|` rounded once to binary64.
pub fn bernoulli_abs(n: u32) -> Result<f64> {
    check_index("bernoulli_abs", n)?;
    Ok(tables().bernoulli[n as usize].to_f64().unwrap_or(f64::NAN))
}

/// Coefficient `a_n = 2^{2n} |B_{2n}| / (2n)!` of `x^{2n-1}` in `1/x - cot x`.
pub fn cot_coefficient<R: Real>(n: u32) -> R {
    let (hi, lo) = tables().cot[n as usize];
    R::from_parts(hi, lo)
}

/// Coefficient `(2^{2n}-1) 2^{2n} |B_{2n}| / (2n)!` of `x^{2n-1}` in `tan x`.
pub fn tan_coefficient<R: Real>(n: u32) -> R {
    let (hi, lo) = tables().tan[n as usize];
    R::from_parts(hi, lo)
}

/// Coefficient `l_n` of `x^{2n}` in `-ln(sin x / x)`. The same numbers give
/// `-ln cos y = sum (2^{2n}-1) l_n y^{2n}`.
pub fn ln_sinc_coefficient<R: Real>(n: u32) -> R {
    let (hi, lo) = tables().ln_sinc[n as usize];
    R::from_parts(hi, lo)
}

pub(crate) fn max_table_index() -> u32 {
    MAX_INDEX + 1
}

fn check_terms(op: &'static str, terms: u32) -> Result<()> {
    if terms == 0 || terms > MAX_INDEX {
        return Err(range(op, format!("N = {terms} not in [1, {MAX_INDEX}]")));
    }
    Ok(())
}

// Tail of sum c_n x^{2n-1} for n > N when c_{n+1}/c_n increases towards
// `limit`: the first dropped term over 1 - limit x^2.
fn geometric_tail(first_dropped: f64, limit_ratio: f64, x: f64) -> f64 {
    let q = limit_ratio * x * x;
    if q >= 1.0 {
        f64::INFINITY
    } else {
        first_dropped / (1.0 - q)
    }
}

/// Partial sum of `cot x = 1/x - sum a_n x^{2n-1}` through `n = terms`.
pub fn cot_series(x: f64, terms: u32) -> Result<SeriesTruncation> {
    let pi = std::f64::consts::PI;
    if x == 0.0 || !(x.abs() < pi) {
        return Err(domain("cot_series", format!("need 0 < |x| < pi, got {x}")));
    }
    check_terms("cot_series", terms)?;
    let coefficients: Vec<f64> = (1..=terms).map(cot_coefficient::<f64>).collect();
    let x2 = x * x;
    // Horner on the odd polynomial, highest power first.
    let poly = coefficients.iter().rev().fold(0.0, |acc, c| acc * x2 + c) * x;
    let dropped = cot_coefficient::<f64>(terms + 1) * x.abs().powi(2 * terms as i32 + 1);
    Ok(SeriesTruncation {
        coefficients,
        truncation_index: terms,
        remainder_bound: geometric_tail(dropped, 1.0 / (pi * pi), x),
        sum: 1.0 / x - poly,
    })
}

/// Partial sum of `tan x = sum t_n x^{2n-1}` through `n = terms`.
pub fn tan_series(x: f64, terms: u32) -> Result<SeriesTruncation> {
    let half_pi = std::f64::consts::FRAC_PI_2;
    if !(x.abs() < half_pi) {
        return Err(domain("tan_series", format!("need |x| < pi/2, got {x}")));
    }
    check_terms("tan_series", terms)?;
    let coefficients: Vec<f64> = (1..=terms).map(tan_coefficient::<f64>).collect();
    let x2 = x * x;
    let sum = coefficients.iter().rev().fold(0.0, |acc, c| acc * x2 + c) * x;
    let dropped = tan_coefficient::<f64>(terms + 1) * x.abs().powi(2 * terms as i32 + 1);
    Ok(SeriesTruncation {
        coefficients,
        truncation_index: terms,
        remainder_bound: geometric_tail(dropped, 1.0 / (half_pi * half_pi), x),
        sum,
    })
}

/// Series for `f_p'(x) = (cot x - 1/x) + tan px` regrouped by powers:
/// `sum (2^{2n}-1) 2^{2n} |B_{2n}| / (2n)! * (p^{2n-1} - 1/(2^{2n}-1)) x^{2n-1}`.
pub fn fp_prime_series(p: f64, x: f64, terms: u32) -> Result<SeriesTruncation> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(domain("fp_prime_series", format!("p = {p} not in (0, 1]")));
    }
    let half_pi = std::f64::consts::FRAC_PI_2;
    if !(x > 0.0 && x < half_pi && p * x < half_pi) {
        return Err(domain("fp_prime_series", format!("x = {x} not in (0, pi/2)")));
    }
    check_terms("fp_prime_series", terms)?;
    let coefficients: Vec<f64> = (1..=terms)
        .map(|n| {
            let t: f64 = tan_coefficient(n);
            let a: f64 = cot_coefficient(n);
            t * p.powi(2 * n as i32 - 1) - a
        })
        .collect();
    let x2 = x * x;
    let sum = coefficients.iter().rev().fold(0.0, |acc, c| acc * x2 + c) * x;
    let cot_tail = cot_series(x, terms)?.remainder_bound;
    let tan_tail = tan_series(p * x, terms)?.remainder_bound;
    Ok(SeriesTruncation { coefficients, truncation_index: terms, remainder_bound: cot_tail + tan_tail, sum })
}

/// `g(s) = (2^{2s} - 1)^{-1/(2s-1)}` for real `s > 1/2`.
pub fn g_of(s: f64) -> Result<f64> {
    if !(s > 0.5) || s.is_nan() {
        return Err(domain("g_of", format!("need s > 1/2, got {s}")));
    }
    if s.is_infinite() {
        return Ok(0.5);
    }
    if s < 400.0 {
        let base = 1.0 / (4f64.powf(s) - 1.0);
        Ok(base.powf(1.0 / (2.0 * s - 1.0)))
    } else {
        // ln(4^s - 1) = s ln 4 + ln(1 - 4^-s)
        let l = s * 4f64.ln() + (-(4f64.powf(-s))).ln_1p();
        Ok((-l / (2.0 * s - 1.0)).exp())
    }
}

/// `d_n = p - g(n)`; its sign decides the sign of each term of `f_p'`.
pub fn d_coefficient(p: f64, n: u32) -> Result<f64> {
    Ok(p - g_of(n as f64)?)
}

/// `b_{n+1}/a_{n+1} - b_n/a_n = (2^{2n+2}-1) p^{2n} - (2^{2n}-1) p^{2n-2}`.
pub fn ratio_step(p: f64, n: u32) -> f64 {
    let four_n = 4f64.powi(n as i32);
    (4.0 * four_n - 1.0) * p.powi(2 * n as i32) - (four_n - 1.0) * p.powi(2 * n as i32 - 2)
}

/// `b_n / a_n = (2^{2n}-1) p^{2n-2}` where `a_n`, `b_n` are the coefficients of
/// `p(1/x - cot x)` and `tan px` after dividing out common factors.
pub fn b_over_a(p: f64, n: u32) -> f64 {
    (4f64.powi(n as i32) - 1.0) * p.powi(2 * n as i32 - 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent route: tangent numbers T_n (Knuth-Buckholtz), then
    // |B_{2n}| = 2n T_n / (4^n (4^n - 1)).
    fn bernoulli_via_tangent(max: u32) -> Vec<BigRational> {
        let m = max as usize;
        let mut t: Vec<BigInt> = vec![BigInt::zero(); m + 1];
        t[1] = BigInt::one();
        for k in 2..=m {
            t[k] = t[k - 1].clone() * BigInt::from(k - 1);
        }
        for k in 2..=m {
            for j in k..=m {
                t[j] = t[j - 1].clone() * BigInt::from(j - k) + t[j].clone() * BigInt::from(j - k + 2);
            }
        }
        (0..=m)
            .map(|n| {
                if n == 0 {
                    return BigRational::one();
                }
                let four_n = BigInt::one() << (2 * n);
                BigRational::new(BigInt::from(2 * n) * t[n].clone(), four_n.clone() * (four_n - BigInt::one()))
            })
            .collect()
    }

    #[test]
    fn first_bernoulli_numbers() {
        assert_eq!(bernoulli_abs(1).unwrap(), 1.0 / 6.0);
        assert_eq!(bernoulli_abs(2).unwrap(), 1.0 / 30.0);
        assert_eq!(bernoulli_abs(3).unwrap(), 1.0 / 42.0);
        assert_eq!(bernoulli_abs_exact(6).unwrap(), BigRational::new(BigInt::from(691), BigInt::from(2730)));
    }

    #[test]
    fn recurrence_matches_tangent_numbers() {
        let oracle = bernoulli_via_tangent(MAX_INDEX);
        for n in 1..=MAX_INDEX {
            assert_eq!(bernoulli_abs_exact(n).unwrap(), oracle[n as usize], "n={n}");
        }
    }

    #[test]
    fn index_range_is_enforced() {
        assert!(bernoulli_abs(0).is_err());
        assert!(bernoulli_abs(61).is_err());
        assert!(bernoulli_abs(60).is_ok());
    }

    #[test]
    fn leading_coefficients() {
        assert_eq!(cot_coefficient::<f64>(1), 1.0 / 3.0);
        assert_eq!(tan_coefficient::<f64>(1), 1.0);
        assert_eq!(ln_sinc_coefficient::<f64>(1), 1.0 / 6.0);
        assert_eq!(ln_sinc_coefficient::<f64>(2), 1.0 / 180.0);
    }

    #[test]
    fn cot_and_tan_at_quarter_pi() {
        let q = std::f64::consts::FRAC_PI_4;
        assert!((cot_series(q, 40).unwrap().sum - 1.0).abs() < 1e-15);
        assert!((tan_series(q, 40).unwrap().sum - 1.0).abs() < 1e-14);
    }

    #[test]
    fn series_domains() {
        assert!(cot_series(0.0, 10).is_err());
        assert!(cot_series(3.2, 10).is_err());
        assert!(tan_series(1.6, 10).is_err());
        assert!(tan_series(0.5, 0).is_err());
        assert!(tan_series(0.5, 61).is_err());
    }

    #[test]
    fn fp_prime_signs() {
        assert!(fp_prime_series(1.0 / 3.0, 1.0, 40).unwrap().sum < 0.0);
        assert!(fp_prime_series(0.5, 1.0, 40).unwrap().sum > 0.0);
    }

    #[test]
    fn g_endpoints() {
        assert_eq!(g_of(1.0).unwrap(), 1.0 / 3.0);
        assert!((g_of(1e9).unwrap() - 0.5).abs() < 1e-9);
        assert_eq!(g_of(f64::INFINITY).unwrap(), 0.5);
        assert!(g_of(0.5).is_err());
    }

    #[test]
    fn ratio_step_at_one() {
        assert_eq!(ratio_step(1.0, 1), 12.0);
    }
}
