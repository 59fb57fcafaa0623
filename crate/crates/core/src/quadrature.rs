//! Adaptive Gauss-Kronrod integration and the special values behind the
//! application enclosures: `Si(pi/2)`, Catalan's constant, and the
//! `int sinc^p` estimates.

use std::f64::consts::FRAC_PI_2;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::bounds::Kernel;
use crate::constants::catalogue;
use crate::dd::DoubleDouble;
use crate::error::{domain, range, Result};
use crate::real::{lit, Real};

pub const CATALAN_LITERAL: f64 = 0.915_965_594_177_219;
pub const DEFAULT_TOL: f64 = 1e-13;
pub const MAX_SUBDIVISIONS: usize = 4000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: u64,
    pub converged: bool,
}

// Kronrod abscissae, descending; odd indices are the Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

// (kronrod, |kronrod - gauss|) on [a, b]
fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for i in 0..7 {
        let dx = half * XGK[i];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// Adaptive G7/K15 on `[a, b]` with absolute tolerance `tol`, split across
/// subintervals in proportion to their length.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<QuadratureResult> {
    integrate_with_budget(f, a, b, tol, MAX_SUBDIVISIONS)
}

pub fn integrate_with_budget(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
    max_subdivisions: usize,
) -> Result<QuadratureResult> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(domain("integrate", format!("need finite a < b, got [{a}, {b}]")));
    }
    if !(tol > 0.0) {
        return Err(domain("integrate", format!("tol = {tol} must be positive")));
    }
    let width = b - a;
    let mut stack = vec![(a, b)];
    let mut value = 0.0;
    let mut compensation = 0.0;
    let mut error_estimate = 0.0;
    let mut evaluations = 0u64;
    let mut splits = 0usize;
    let mut converged = true;
    while let Some((lo, hi)) = stack.pop() {
        let (v, e) = gk15(&f, lo, hi);
        evaluations += 15;
        let share = tol * (hi - lo) / width;
        let mid = 0.5 * (lo + hi);
        let can_split = splits < max_subdivisions && mid > lo && mid < hi;
        if e <= share || !can_split || !e.is_finite() {
            if e > share || !e.is_finite() {
                converged = false;
            }
            // Neumaier summation keeps the total independent of interval count.
            let t = value + v;
            compensation += if value.abs() >= v.abs() { (value - t) + v } else { (v - t) + value };
            value = t;
            error_estimate += e;
        } else {
            splits += 1;
            stack.push((mid, hi));
            stack.push((lo, mid));
        }
    }
    Ok(QuadratureResult { value: value + compensation, error_estimate, evaluations, converged })
}

/// Sine integral via its alternating power series, for `x` in `[0, 10]`.
pub fn si_in<R: Real>(x: R) -> Result<R> {
    let xf = x.to_f64();
    if !(0.0..=10.0).contains(&xf) {
        return Err(range("si", format!("x = {xf} not in [0, 10]")));
    }
    if xf == 0.0 {
        return Ok(R::zero());
    }
    let stop = (R::UNIT_ROUNDOFF * 0.25).min(1e-17);
    let x2 = x * x;
    // power = (-1)^n x^{2n+1} / (2n+1)!
    let mut power = x;
    let mut sum = x;
    let mut n = 0.0;
    loop {
        n += 1.0;
        power = -(power * x2).div_f64((2.0 * n) * (2.0 * n + 1.0));
        let term = power.div_f64(2.0 * n + 1.0);
        sum = sum + term;
        if term.abs().to_f64() < stop * sum.abs().to_f64() || n > 200.0 {
            break;
        }
    }
    Ok(sum)
}

pub fn si(x: f64) -> Result<f64> {
    si_in(x)
}

/// Catalan's constant by Cohen-Villegas-Zagier acceleration of
/// `sum (-1)^k / (2k+1)^2`.
pub fn catalan<R: Real>() -> R {
    // error ~ (3 + sqrt 8)^-n
    let n = (-(R::UNIT_ROUNDOFF.log10()) / 5.828_f64.log10()).ceil() as i32 + 3;
    let d0 = (lit::<R>(3.0) + lit::<R>(8.0).sqrt()).powi(n);
    let d = (d0 + R::one() / d0).div_f64(2.0);
    let mut b = -R::one();
    let mut c = -d;
    let mut s = R::zero();
    for k in 0..n {
        c = b - c;
        let odd = lit::<R>(2.0 * k as f64 + 1.0);
        s = s + c / (odd * odd);
        let kf = k as f64;
        let nf = n as f64;
        b = b.mul_f64((kf + nf) * (kf - nf)).div_f64((kf + 0.5) * (kf + 1.0));
    }
    s / d
}

/// Catalan's constant in binary64, from the double-double series.
pub fn catalan_reference() -> f64 {
    static VALUE: OnceLock<f64> = OnceLock::new();
    *VALUE.get_or_init(|| catalan::<DoubleDouble>().to_f64())
}

/// Sum of the first `m` terms of `sum (-1)^k / (2k+1)^2`.
pub fn catalan_partial_sum(m: usize) -> f64 {
    let mut sum = DoubleDouble::zero();
    for k in 0..m {
        let odd = DoubleDouble::from_f64(2.0 * k as f64 + 1.0);
        let term = DoubleDouble::one() / (odd * odd);
        sum = if k % 2 == 0 { sum + term } else { sum - term };
    }
    sum.to_f64()
}

/// `x / sin x` with the even series below the kernel's switchover.
pub fn x_over_sin(kernel: &Kernel, x: f64) -> f64 {
    if x.abs() < kernel.small_x() {
        let x2 = x * x;
        1.0 + x2 * (1.0 / 6.0 + x2 * (7.0 / 360.0 + x2 * (31.0 / 15120.0)))
    } else {
        x / x.sin()
    }
}

/// `(1/2) int_0^{pi/2} x / sin x dx`, which equals Catalan's constant.
pub fn catalan_by_quadrature(tol: f64) -> Result<QuadratureResult> {
    let k = Kernel::default();
    let mut r = integrate(|x| x_over_sin(&k, x), 0.0, FRAC_PI_2, 2.0 * tol)?;
    r.value *= 0.5;
    r.error_estimate *= 0.5;
    Ok(r)
}

/// The two sides of the averaged-sine bound `(sin 2x + sin x)/(3x) < ((cos x + 1)/2)^2`.
pub fn mb41_check(x: f64) -> Result<(f64, f64)> {
    if !(x > 0.0 && x < FRAC_PI_2) {
        return Err(domain("mb41_check", format!("x = {x} not in (0, pi/2)")));
    }
    let lhs = ((2.0 * x).sin() + x.sin()) / (3.0 * x);
    let half = (x.cos() + 1.0) / 2.0;
    Ok((lhs, half * half))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ordering {
    /// `lower < integral < upper`
    Direct,
    /// `upper < integral < lower`
    Reversed,
}

/// Endpoints and quadrature value of `int_0^{pi/2} sinc(x)^p dx`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SincPowerEnclosure {
    pub p: f64,
    /// `(2/pi)^p (1/p) tan(p pi/2)`; infinite at `p = 1`.
    pub lower: f64,
    pub integral: f64,
    /// `(1/p) sin(p pi/2)`
    pub upper: f64,
    pub ordering: Ordering,
    pub holds: bool,
    pub quadrature: QuadratureResult,
}

/// Requires `p` in `(0, 1/3]` (direct ordering) or `[1/2, 1]` (reversed).
pub fn a1_enclosure(p: f64, tol: f64) -> Result<SincPowerEnclosure> {
    let ordering = if p > 0.0 && p <= 1.0 / 3.0 {
        Ordering::Direct
    } else if (0.5..=1.0).contains(&p) {
        Ordering::Reversed
    } else {
        return Err(domain("a1_enclosure", format!("p = {p} not in (0, 1/3] or [1/2, 1]")));
    };
    let k = Kernel::default();
    let quadrature = integrate(|x| (p * k.ln_sinc(x)).exp(), 0.0, FRAC_PI_2, tol)?;
    let integral = quadrature.value;
    let angle = p * FRAC_PI_2;
    let lower = if p == 1.0 { f64::INFINITY } else { (2.0 / std::f64::consts::PI).powf(p) * angle.tan() / p };
    let upper = angle.sin() / p;
    let holds = match ordering {
        Ordering::Direct => lower < integral && integral < upper,
        Ordering::Reversed => upper < integral && integral < lower,
    };
    Ok(SincPowerEnclosure { p, lower, integral, upper, ordering, holds, quadrature })
}

/// A reference value tested against an open interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnclosureCheck {
    pub id: String,
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
    pub holds: bool,
}

impl EnclosureCheck {
    fn new(id: &str, lower: f64, value: f64, upper: f64) -> Self {
        Self { id: id.to_string(), lower, value, upper, holds: lower < value && value < upper }
    }

    pub fn min_margin(&self) -> f64 {
        (self.value - self.lower).min(self.upper - self.value)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApplicationReport {
    pub si_half_pi: f64,
    pub catalan: f64,
    /// Sine integral in the cos-power enclosure, then in the two older ones.
    pub a2: EnclosureCheck,
    pub qi: EnclosureCheck,
    pub wu: EnclosureCheck,
    /// `wu.lower < a2.lower` and `a2.upper < wu.upper`
    pub tightens_wu: bool,
    pub a31: EnclosureCheck,
    pub a32: EnclosureCheck,
}

impl ApplicationReport {
    pub fn checks(&self) -> [&EnclosureCheck; 5] {
        [&self.a2, &self.qi, &self.wu, &self.a31, &self.a32]
    }

    pub fn all_hold(&self) -> bool {
        self.tightens_wu && self.checks().iter().all(|c| c.holds)
    }
}

pub fn application_enclosures() -> Result<ApplicationReport> {
    let cat = catalogue();
    let pi = std::f64::consts::PI;
    let si_half_pi = si(FRAC_PI_2)?;
    let k = catalan_reference();
    let a2 = EnclosureCheck::new("a2", cat.a2_lower, si_half_pi, cat.a2_upper);
    let wu = EnclosureCheck::new("wu", (92.0 - pi * pi) / 60.0, si_half_pi, (8.0 + 4.0 * pi) / 15.0);
    let qi = EnclosureCheck::new("qi", 4.0 / 3.0, si_half_pi, (pi + 1.0) / 3.0);
    let tightens_wu = wu.lower < a2.lower && a2.upper < wu.upper;
    Ok(ApplicationReport {
        si_half_pi,
        catalan: k,
        a2,
        qi,
        wu,
        tightens_wu,
        a31: EnclosureCheck::new("a31", cat.a31_lower, k, cat.a31_upper),
        a32: EnclosureCheck::new("a32", cat.a32_lower, k, cat.a32_upper),
    })
}

/// A definite integral with a known closed form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegralCheck {
    pub id: String,
    pub description: String,
    pub closed_form: f64,
    pub quadrature: QuadratureResult,
    pub relative_residual: f64,
}

/// `int_0^{pi/2} dx / cos^3(x/3)` and `int_0^{pi/2} dx / (cos(x/2) cos^3(x/6))`.
pub fn closed_form_integrals(tol: f64) -> Result<Vec<IntegralCheck>> {
    let sqrt3 = 3.0_f64.sqrt();
    let rows = [
        (
            "inv_cos_cubed_third",
            "int_0^{pi/2} dx / cos^3(x/3)",
            1.0 + 0.75 * 3.0_f64.ln(),
            integrate(|x| (x / 3.0).cos().powi(-3), 0.0, FRAC_PI_2, tol)?,
        ),
        (
            "inv_cos_half_cos_cubed_sixth",
            "int_0^{pi/2} dx / (cos(x/2) cos^3(x/6))",
            8.0 * sqrt3 / 9.0 * (2.0 * (sqrt3 + 1.0).ln() - 10.0 * sqrt3 + 16.5),
            integrate(|x| 1.0 / ((x / 2.0).cos() * (x / 6.0).cos().powi(3)), 0.0, FRAC_PI_2, tol)?,
        ),
    ];
    Ok(rows
        .into_iter()
        .map(|(id, description, closed_form, quadrature)| IntegralCheck {
            id: id.to_string(),
            description: description.to_string(),
            closed_form,
            relative_residual: ((quadrature.value - closed_form) / closed_form).abs(),
            quadrature,
        })
        .collect())
}
