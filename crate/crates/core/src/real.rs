//! Scalar abstraction shared by the working-precision (`f64`) and
//! extended-precision ([`DoubleDouble`](crate::dd::DoubleDouble)) evaluation paths.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// A real scalar type with the elementary functions the bounds need.
///
/// Every evaluator in this crate is generic over `Real`, so the same code path
/// runs in binary64 and in double-double arithmetic.
pub trait Real:
    Copy
    + Debug
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Unit roundoff (half an ulp at 1.0).
    const UNIT_ROUNDOFF: f64;

    fn from_f64(v: f64) -> Self;
    /// Builds a value from an unevaluated sum `hi + lo`. Types without a tail
    /// simply round the sum.
    fn from_parts(hi: f64, lo: f64) -> Self;
    fn to_f64(self) -> f64;

    fn pi() -> Self;
    fn frac_pi_2() -> Self;

    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn exp_m1(self) -> Self;
    fn ln(self) -> Self;
    fn ln_1p(self) -> Self;
    fn sin_cos(self) -> (Self, Self);
    fn atan(self) -> Self;
    fn asin(self) -> Self;
    fn acos(self) -> Self;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
    fn acosh(self) -> Self;

    fn sin(self) -> Self {
        self.sin_cos().0
    }

    fn cos(self) -> Self {
        self.sin_cos().1
    }

    fn tan(self) -> Self {
        let (s, c) = self.sin_cos();
        s / c
    }

    fn powi(self, n: i32) -> Self {
        let mut base = if n < 0 { Self::one() / self } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }

    fn is_finite(self) -> bool {
        self.to_f64().is_finite()
    }

    fn is_nan(self) -> bool {
        self.to_f64().is_nan()
    }

    fn mul_f64(self, k: f64) -> Self {
        self * Self::from_f64(k)
    }

    fn div_f64(self, k: f64) -> Self {
        self / Self::from_f64(k)
    }
}

impl Real for f64 {
    const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

    #[inline]
    fn from_f64(v: f64) -> Self {
        v
    }

    #[inline]
    fn from_parts(hi: f64, lo: f64) -> Self {
        hi + lo
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self
    }

    fn pi() -> Self {
        std::f64::consts::PI
    }

    fn frac_pi_2() -> Self {
        std::f64::consts::FRAC_PI_2
    }

    fn abs(self) -> Self {
        f64::abs(self)
    }

    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }

    fn exp(self) -> Self {
        f64::exp(self)
    }

    fn exp_m1(self) -> Self {
        f64::exp_m1(self)
    }

    fn ln(self) -> Self {
        f64::ln(self)
    }

    fn ln_1p(self) -> Self {
        f64::ln_1p(self)
    }

    fn sin_cos(self) -> (Self, Self) {
        f64::sin_cos(self)
    }

    fn sin(self) -> Self {
        f64::sin(self)
    }

    fn cos(self) -> Self {
        f64::cos(self)
    }

    fn tan(self) -> Self {
        f64::tan(self)
    }

    fn atan(self) -> Self {
        f64::atan(self)
    }

    fn asin(self) -> Self {
        f64::asin(self)
    }

    fn acos(self) -> Self {
        f64::acos(self)
    }

    fn sinh(self) -> Self {
        f64::sinh(self)
    }

    fn cosh(self) -> Self {
        f64::cosh(self)
    }

    fn acosh(self) -> Self {
        f64::acosh(self)
    }

    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }

    fn mul_f64(self, k: f64) -> Self {
        self * k
    }

    fn div_f64(self, k: f64) -> Self {
        self / k
    }
}

/// Shorthand for lifting an `f64` literal into any [`Real`].
#[inline]
pub fn lit<R: Real>(v: f64) -> R {
    R::from_f64(v)
}
