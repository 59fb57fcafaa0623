//! Expressions that appear on either side of a catalogued claim.

use crate::bounds::{BoundExpr, Kernel};
use crate::error::{domain, Result};
use crate::real::{lit, Real};

/// One side of an inequality or identity, evaluable at a point `x`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Bound(BoundExpr),
    One,
    /// `factor * inner`
    Scaled {
        factor: f64,
        inner: Box<Expr>,
    },
    /// `(cos px)^exponent`
    CosPowerExponent {
        p: f64,
        exponent: f64,
    },
    /// `(cos px)^(1/(3p^2))`, the cos power with the same curvature at 0 as sinc
    CosPowerMatched {
        p: f64,
    },
    /// `sin(3x)/x`
    Sin3xOverX,
    /// `(sin 2x + sin x)/(3x)`
    AveragedSine,
    /// `((cos x + 1)/2)^2`
    HalfCosSquared,
    /// `scale * cos^3(x/6) cos(x/2)`
    HalfAngleChain {
        scale: f64,
    },
    /// `1 - sin x sin(x/3)/cos^4(x/3) - cos x/cos^3(x/3)`
    HDerivative,
    /// `tan^4(x/3)`
    TanFourthThird,
    /// `cos^3(x/3) - (2 + cos x)/3`
    CubeDifference,
    /// `-(1/3)(cos(x/3) + 2)(cos(x/3) - 1)^2`
    CubeDifferenceFactored,
    /// `sinh x / x`
    Sinhc,
    /// `cosh^3(x/3)`
    CoshCubedThird,
}

impl From<BoundExpr> for Expr {
    fn from(b: BoundExpr) -> Self {
        Expr::Bound(b)
    }
}

impl Expr {
    pub fn scaled(factor: f64, inner: impl Into<Expr>) -> Self {
        Expr::Scaled { factor, inner: Box::new(inner.into()) }
    }

    pub fn label(&self) -> String {
        match self {
            Expr::Bound(b) => b.label(),
            Expr::One => "1".into(),
            Expr::Scaled { factor, inner } => format!("{factor}*{}", inner.label()),
            Expr::CosPowerExponent { p, exponent } => format!("cos({p}x)^{exponent}"),
            Expr::CosPowerMatched { p } => format!("cos({p}x)^(1/(3*{p}^2))"),
            Expr::Sin3xOverX => "sin(3x)/x".into(),
            Expr::AveragedSine => "(sin 2x+sin x)/(3x)".into(),
            Expr::HalfCosSquared => "((cos x+1)/2)^2".into(),
            Expr::HalfAngleChain { scale } => format!("{scale}*cos^3(x/6)cos(x/2)"),
            Expr::HDerivative => "1-sin x sin(x/3)/cos^4(x/3)-cos x/cos^3(x/3)".into(),
            Expr::TanFourthThird => "tan^4(x/3)".into(),
            Expr::CubeDifference => "cos^3(x/3)-(2+cos x)/3".into(),
            Expr::CubeDifferenceFactored => "-(1/3)(cos(x/3)+2)(cos(x/3)-1)^2".into(),
            Expr::Sinhc => "sinh(x)/x".into(),
            Expr::CoshCubedThird => "cosh^3(x/3)".into(),
        }
    }

    pub fn eval<R: Real>(&self, kernel: &Kernel, x: R) -> Result<R> {
        Ok(self.eval_with_magnitude(kernel, x)?.0)
    }

    /// Value together with the magnitude of the terms that produced it; the
    /// magnitude sets the rounding scale for identity checks.
    pub fn eval_with_magnitude<R: Real>(&self, kernel: &Kernel, x: R) -> Result<(R, f64)> {
        let plain = |v: R| (v, v.to_f64().abs());
        let v = match self {
            Expr::Bound(b) => plain(b.eval(kernel, x)?),
            Expr::One => plain(R::one()),
            Expr::Scaled { factor, inner } => {
                let (v, m) = inner.eval_with_magnitude(kernel, x)?;
                (v.mul_f64(*factor), m * factor.abs())
            }
            Expr::CosPowerExponent { p, exponent } => {
                let c = x.mul_f64(*p).cos();
                if !(c.to_f64() > 0.0) {
                    return Err(domain("CosPowerExponent", "cos(px) must be positive"));
                }
                plain(c.ln().mul_f64(*exponent).exp())
            }
            Expr::CosPowerMatched { p } => {
                let p = lit::<R>(*p);
                let c = (p * x).cos();
                if !(c.to_f64() > 0.0) {
                    return Err(domain("CosPowerMatched", "cos(px) must be positive"));
                }
                plain((c.ln() / (lit::<R>(3.0) * p * p)).exp())
            }
            Expr::Sin3xOverX => {
                if x.to_f64() == 0.0 {
                    plain(lit(3.0))
                } else {
                    // sin 3x / x = 3 sinc(3x)
                    plain(kernel.sinc(x.mul_f64(3.0)).mul_f64(3.0))
                }
            }
            Expr::AveragedSine => {
                // (sin 2x + sin x)/(3x) = (2 sinc(2x) + sinc(x))/3
                let s2 = kernel.sinc(x.mul_f64(2.0));
                let s1 = kernel.sinc(x);
                plain((s2.mul_f64(2.0) + s1).div_f64(3.0))
            }
            Expr::HalfCosSquared => {
                let h = (x.cos() + R::one()).div_f64(2.0);
                plain(h * h)
            }
            Expr::HalfAngleChain { scale } => {
                let c6 = x.div_f64(6.0).cos();
                plain((c6 * c6 * c6 * x.div_f64(2.0).cos()).mul_f64(*scale))
            }
            Expr::HDerivative => {
                let third = x.div_f64(3.0);
                let (s3, c3) = third.sin_cos();
                let (s, c) = x.sin_cos();
                if !(c3.to_f64() > 0.0) {
                    return Err(domain("HDerivative", "cos(x/3) must be positive"));
                }
                let c3_cubed = c3 * c3 * c3;
                let a = s * s3 / (c3_cubed * c3);
                let b = c / c3_cubed;
                let mag = 1.0 + a.to_f64().abs() + b.to_f64().abs();
                (R::one() - a - b, mag)
            }
            Expr::TanFourthThird => {
                let t = x.div_f64(3.0).tan();
                let t2 = t * t;
                plain(t2 * t2)
            }
            Expr::CubeDifference => {
                let c3 = x.div_f64(3.0).cos();
                let cube = c3 * c3 * c3;
                let avg = (lit::<R>(2.0) + x.cos()).div_f64(3.0);
                (cube - avg, cube.to_f64().abs() + avg.to_f64().abs())
            }
            Expr::CubeDifferenceFactored => {
                let c3 = x.div_f64(3.0).cos();
                let d = c3 - R::one();
                plain(-((c3 + lit(2.0)) * d * d).div_f64(3.0))
            }
            Expr::Sinhc => plain(kernel.sinhc_and_bound(x)?.0),
            Expr::CoshCubedThird => plain(kernel.sinhc_and_bound(x)?.1),
        };
        Ok(v)
    }
}
