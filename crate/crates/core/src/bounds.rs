//! Evaluators for `sin x / x`, the cos-power bound families, the log
//! difference `f_p`, the log ratio `F_p`, and the closed-form bounds.
//!
//! All functions are generic over [`Real`], so they run unchanged in binary64
//! and in double-double. Removable singularities at the origin switch to
//! power series below a small-argument threshold (2^-10 by default); the
//! series coefficients come from the exact Bernoulli tables in
//! [`series`](crate::series).

use serde::{Deserialize, Serialize};

use crate::config::PrecisionConfig;
use crate::error::{domain, Result};
use crate::real::{lit, Real};
use crate::series::{ln_sinc_coefficient, max_table_index};

pub const DEFAULT_SMALL_X: f64 = 1.0 / 1024.0;

/// Evaluation kernel carrying the series switchover threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kernel {
    small_x: f64,
}

impl Default for Kernel {
    fn default() -> Self {
        Self { small_x: DEFAULT_SMALL_X }
    }
}

fn small_enough<R: Real>(term: R, sum: R) -> bool {
    term.abs().to_f64() <= R::UNIT_ROUNDOFF * 0.25 * sum.abs().to_f64()
}

fn check_p<R: Real>(op: &'static str, p: R) -> Result<()> {
    let pf = p.to_f64();
    if !(pf > 0.0 && p <= R::one()) {
        return Err(domain(op, format!("p = {pf} not in (0, 1]")));
    }
    Ok(())
}

fn check_px<R: Real>(op: &'static str, p: R, x: R) -> Result<()> {
    if !x.is_finite() || !((p * x).abs() < R::frac_pi_2()) {
        return Err(domain(op, format!("p*x = {} must satisfy |p*x| < pi/2", (p * x).to_f64())));
    }
    Ok(())
}

impl Kernel {
    pub fn new(small_x: f64) -> Self {
        Self { small_x }
    }

    pub fn from_config(cfg: &PrecisionConfig) -> Self {
        Self { small_x: cfg.small_x_threshold }
    }

    pub fn small_x(&self) -> f64 {
        self.small_x
    }

    fn is_small<R: Real>(&self, x: R) -> bool {
        x.abs().to_f64() < self.small_x
    }

    /// `sin x / x`, with `sinc(0) = 1`.
    pub fn sinc<R: Real>(&self, x: R) -> R {
        if self.is_small(x) {
            // 1 - x^2/3! + x^4/5! - ...
            let x2 = x * x;
            let mut sum = R::one();
            let mut term = R::one();
            let mut k = 1.0;
            loop {
                term = -(term * x2).div_f64((k + 1.0) * (k + 2.0));
                k += 2.0;
                sum = sum + term;
                if small_enough(term, sum) || k > 60.0 {
                    break;
                }
            }
            sum
        } else {
            x.sin() / x
        }
    }

    /// `ln(sin x / x)` for `|x| < pi`.
    pub fn ln_sinc<R: Real>(&self, x: R) -> R {
        if self.is_small(x) {
            -self.even_series(x, |_| R::one())
        } else {
            self.sinc(x).ln()
        }
    }

    // sum_n w(n) l_n x^{2n}, the shape shared by ln sinc, ln cos and f_p.
    fn even_series<R: Real>(&self, x: R, weight: impl Fn(u32) -> R) -> R {
        let x2 = x * x;
        let mut pow = x2;
        let mut sum = R::zero();
        for n in 1..=max_table_index() {
            let term = weight(n) * ln_sinc_coefficient::<R>(n) * pow;
            sum = sum + term;
            if small_enough(term, sum) {
                break;
            }
            pow = pow * x2;
        }
        sum
    }

    /// `(1/p) ln cos(px)`, the logarithm of the cos-power bound.
    pub fn ln_cos_power<R: Real>(&self, p: R, x: R) -> Result<R> {
        check_p("cos_power", p)?;
        check_px("cos_power", p, x)?;
        if self.is_small(p * x) {
            // ln cos y = -sum (4^n - 1) l_n y^{2n}, divided by p
            let p2 = p * p;
            let s = self.even_series(x, |n| {
                let four_n = lit::<R>(4f64.powi(n as i32)) - R::one();
                four_n * p2.powi(n as i32) / p
            });
            Ok(-s)
        } else {
            Ok((p * x).cos().ln() / p)
        }
    }

    /// `(cos px)^{1/p}` computed as `exp((1/p) ln cos px)`.
    pub fn cos_power<R: Real>(&self, p: R, x: R) -> Result<R> {
        if x.to_f64() == 0.0 {
            check_p("cos_power", p)?;
            return Ok(R::one());
        }
        Ok(self.ln_cos_power(p, x)?.exp())
    }

    /// `beta(p, c) = sinc(c) (cos pc)^{-1/p}`, the sharp multiplier of the
    /// cos-power bound on `(0, c)`.
    pub fn beta<R: Real>(&self, p: R, c: R) -> Result<R> {
        check_p("beta", p)?;
        let cf = c.to_f64();
        if !(cf > 0.0 && c <= R::frac_pi_2()) {
            return Err(domain("beta", format!("c = {cf} not in (0, pi/2]")));
        }
        check_px("beta", p, c)?;
        Ok(self.sinc(c) * (-self.ln_cos_power(p, c)?).exp())
    }

    /// `f_p(x) = ln(sin x / x) - (1/p) ln cos px` on `[0, pi/2]`.
    pub fn f_p<R: Real>(&self, p: R, x: R) -> Result<R> {
        check_p("f_p", p)?;
        let xf = x.to_f64();
        if !(xf >= 0.0 && x <= R::frac_pi_2()) {
            return Err(domain("f_p", format!("x = {xf} not in [0, pi/2]")));
        }
        check_px("f_p", p, x)?;
        if xf == 0.0 {
            return Ok(R::zero());
        }
        if self.is_small(x) {
            // sum l_n ((4^n - 1) p^{2n-1} - 1) x^{2n}
            return Ok(self.even_series(x, |n| {
                let four_n = lit::<R>(4f64.powi(n as i32)) - R::one();
                four_n * p.powi(2 * n as i32 - 1) - R::one()
            }));
        }
        Ok(self.ln_sinc(x) - self.ln_cos_power(p, x)?)
    }

    /// `F_p(x) = ln(sin x / x) / ln cos px` on `(0, pi/2)`.
    pub fn f_ratio<R: Real>(&self, p: R, x: R) -> Result<R> {
        check_p("F_p", p)?;
        let xf = x.to_f64();
        if !(xf > 0.0 && x < R::frac_pi_2()) {
            return Err(domain("F_p", format!("x = {xf} not in (0, pi/2)")));
        }
        check_px("F_p", p, x)?;
        if self.is_small(x) {
            // Both logs are x^2 times a series in x^2; cancel the x^2.
            let x2 = x * x;
            let p2 = p * p;
            let mut num = R::zero();
            let mut den = R::zero();
            let mut pow = R::one();
            for n in 1..=max_table_index() {
                let l = ln_sinc_coefficient::<R>(n);
                let four_n = lit::<R>(4f64.powi(n as i32)) - R::one();
                let tn = l * pow;
                let td = four_n * p2.powi(n as i32) * l * pow;
                num = num + tn;
                den = den + td;
                if small_enough(tn, num) && small_enough(td, den) {
                    break;
                }
                pow = pow * x2;
            }
            return Ok(num / den);
        }
        Ok(self.ln_sinc(x) / (p * x).cos().ln())
    }

    /// `(sinh u / u, cosh^3(u/3))` for `u >= 0`.
    pub fn sinhc_and_bound<R: Real>(&self, u: R) -> Result<(R, R)> {
        let uf = u.to_f64();
        if !(uf >= 0.0) || !u.is_finite() {
            return Err(domain("sinhc_and_bound", format!("u = {uf} must be >= 0")));
        }
        let first = if self.is_small(u) {
            let u2 = u * u;
            let mut sum = R::one();
            let mut term = R::one();
            let mut k = 1.0;
            loop {
                term = (term * u2).div_f64((k + 1.0) * (k + 2.0));
                k += 2.0;
                sum = sum + term;
                if small_enough(term, sum) || k > 60.0 {
                    break;
                }
            }
            sum
        } else {
            u.sinh() / u
        };
        let c = u.div_f64(3.0).cosh();
        Ok((first, c * c * c))
    }
}

/// Limit of `F_p` at `0+`: `1/(3p^2)`.
pub fn f_ratio_at_zero<R: Real>(p: R) -> R {
    R::one() / (lit::<R>(3.0) * p * p)
}

/// Limit of `F_p` at `(pi/2)-`: `(ln 2 - ln pi) / ln cos(pi p / 2)`, and 0 at `p = 1`.
pub fn f_ratio_at_half_pi<R: Real>(p: R) -> R {
    if p >= R::one() {
        return R::zero();
    }
    let num = lit::<R>(2.0).ln() - R::pi().ln();
    num / (p * R::frac_pi_2()).cos().ln()
}

pub fn sinc<R: Real>(x: R) -> R {
    Kernel::default().sinc(x)
}

pub fn cos_power<R: Real>(p: R, x: R) -> Result<R> {
    Kernel::default().cos_power(p, x)
}

pub fn beta<R: Real>(p: R, c: R) -> Result<R> {
    Kernel::default().beta(p, c)
}

pub fn f_p<R: Real>(p: R, x: R) -> Result<R> {
    Kernel::default().f_p(p, x)
}

/// `F_p(x)`; see [`Kernel::f_ratio`].
pub fn f_ratio<R: Real>(p: R, x: R) -> Result<R> {
    Kernel::default().f_ratio(p, x)
}

pub fn sinhc_and_bound<R: Real>(u: R) -> Result<(R, R)> {
    Kernel::default().sinhc_and_bound(u)
}

/// One closed-form bound expression in `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundExpr {
    Sinc,
    /// `(cos px)^{1/p}`
    CosPower {
        p: f64,
    },
    /// `beta(p, c) (cos px)^{1/p}`
    ScaledCosPower {
        p: f64,
        c: f64,
    },
    /// `cos^2(x/2)`
    QiLower,
    /// `cos^3(x/3)`
    KlenUpper3,
    /// `(2 + cos x)/3`
    TwoPlusCosOver3,
    /// `(3/4)(cos x + 1)^2 / (2 cos x + 1)`
    Mb4Rational,
    /// `3 cos^3 x`
    ThreeCosCubed,
    ConstantTwoOverPi,
    /// `(cos(x/3))^alpha`
    CosPowerAlpha {
        alpha: f64,
    },
}

impl BoundExpr {
    /// Checks the parameter invariants of the variant.
    pub fn validate(&self) -> Result<()> {
        let half_pi = std::f64::consts::FRAC_PI_2;
        match *self {
            BoundExpr::CosPower { p } => check_p("CosPower", p),
            BoundExpr::ScaledCosPower { p, c } => {
                check_p("ScaledCosPower", p)?;
                if !(c > 0.0 && c <= half_pi && p * c < half_pi) {
                    return Err(domain("ScaledCosPower", format!("c = {c} invalid for p = {p}")));
                }
                Ok(())
            }
            BoundExpr::CosPowerAlpha { alpha } => {
                if !(alpha > 0.0 && alpha.is_finite()) {
                    return Err(domain("CosPowerAlpha", format!("alpha = {alpha} must be > 0")));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn label(&self) -> String {
        match *self {
            BoundExpr::Sinc => "sin(x)/x".into(),
            BoundExpr::CosPower { p } => format!("cos({p}x)^(1/{p})"),
            BoundExpr::ScaledCosPower { p, c } => format!("beta({p},{c})*cos({p}x)^(1/{p})"),
            BoundExpr::QiLower => "cos^2(x/2)".into(),
            BoundExpr::KlenUpper3 => "cos^3(x/3)".into(),
            BoundExpr::TwoPlusCosOver3 => "(2+cos x)/3".into(),
            BoundExpr::Mb4Rational => "3/4*(cos x+1)^2/(2cos x+1)".into(),
            BoundExpr::ThreeCosCubed => "3cos^3(x)".into(),
            BoundExpr::ConstantTwoOverPi => "2/pi".into(),
            BoundExpr::CosPowerAlpha { alpha } => format!("cos(x/3)^{alpha}"),
        }
    }

    pub fn eval<R: Real>(&self, kernel: &Kernel, x: R) -> Result<R> {
        if !x.is_finite() {
            return Err(domain("eval_bound", "non-finite argument"));
        }
        self.validate()?;
        let v = match *self {
            BoundExpr::Sinc => kernel.sinc(x),
            BoundExpr::CosPower { p } => kernel.cos_power(lit(p), x)?,
            BoundExpr::ScaledCosPower { p, c } => kernel.beta(lit::<R>(p), lit(c))? * kernel.cos_power(lit(p), x)?,
            BoundExpr::QiLower => {
                let c = x.div_f64(2.0).cos();
                c * c
            }
            BoundExpr::KlenUpper3 => {
                let c = x.div_f64(3.0).cos();
                c * c * c
            }
            BoundExpr::TwoPlusCosOver3 => (lit::<R>(2.0) + x.cos()).div_f64(3.0),
            BoundExpr::Mb4Rational => {
                let c = x.cos();
                let den = c.mul_f64(2.0) + R::one();
                if !(den.to_f64() > 0.0) {
                    return Err(domain("Mb4Rational", "2 cos x + 1 must be positive"));
                }
                let n = c + R::one();
                (n * n).mul_f64(0.75) / den
            }
            BoundExpr::ThreeCosCubed => {
                let c = x.cos();
                (c * c * c).mul_f64(3.0)
            }
            BoundExpr::ConstantTwoOverPi => lit::<R>(2.0) / R::pi(),
            BoundExpr::CosPowerAlpha { alpha } => {
                let c = x.div_f64(3.0).cos();
                if !(c.to_f64() > 0.0) {
                    return Err(domain("CosPowerAlpha", "cos(x/3) must be positive"));
                }
                (c.ln().mul_f64(alpha)).exp()
            }
        };
        Ok(v)
    }
}

pub fn eval_bound<R: Real>(expr: &BoundExpr, x: R) -> Result<R> {
    expr.eval(&Kernel::default(), x)
}
