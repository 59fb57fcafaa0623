//! Double-double arithmetic: an unevaluated sum `hi + lo` of two binary64
//! values giving roughly 106 bits (about 32 decimal digits) of precision.
//!
//! This is the extended-precision path used by oracle mode and by the
//! verifier when a working-precision margin is too small to trust.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::real::Real;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

// pi/2 and ln 2 split into three binary64 words.
#[allow(clippy::approx_constant)]
const HALF_PI: [f64; 3] = [1.5707963267948966, 6.123233995736766e-17, -1.4973849048591698e-33];
#[allow(clippy::approx_constant)]
const LN2: [f64; 3] = [0.6931471805599453, 2.3190468138462996e-17, 5.707708438416212e-34];
#[allow(clippy::approx_constant)]
const PI: [f64; 2] = [3.141592653589793, 1.2246467991473532e-16];

// Series loops stop once a term drops below this fraction of the running sum.
const SERIES_CUTOFF: f64 = 1e-36;

impl DoubleDouble {
    pub const fn new(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    /// Renormalizes an arbitrary pair.
    pub fn from_sum(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        Self { hi, lo }
    }

    pub fn from_prod(a: f64, b: f64) -> Self {
        let (hi, lo) = two_prod(a, b);
        Self { hi, lo }
    }

    /// Smallest binary64 value not below `self`.
    pub fn round_up_f64(self) -> f64 {
        let v = self.hi + self.lo;
        if Self::from_f64(v) < self {
            v.next_up()
        } else {
            v
        }
    }

    /// Largest binary64 value not above `self`.
    pub fn round_down_f64(self) -> f64 {
        let v = self.hi + self.lo;
        if Self::from_f64(v) > self {
            v.next_down()
        } else {
            v
        }
    }

    /// Decimal rendering with `digits` significant digits.
    pub fn to_decimal(self, digits: usize) -> String {
        if !self.hi.is_finite() {
            return format!("{}", self.hi);
        }
        if self.hi == 0.0 {
            return "0".into();
        }
        let negative = self.hi < 0.0;
        let mut v = if negative { -self } else { self };
        let ten = Self::from_f64(10.0);
        let mut exponent = v.hi.log10().floor() as i32;
        v = v / ten.powi(exponent);
        if v.hi >= 10.0 {
            v = v / ten;
            exponent += 1;
        } else if v.hi < 1.0 {
            v = v * ten;
            exponent -= 1;
        }
        // one guard digit, then round half up
        let mut out: Vec<u8> = Vec::with_capacity(digits + 1);
        for _ in 0..=digits {
            let d = v.hi.floor().clamp(0.0, 9.0);
            out.push(d as u8);
            v = (v - Self::from_f64(d)) * ten;
        }
        let guard = out.pop().unwrap_or(0);
        if guard >= 5 {
            let mut i = out.len();
            loop {
                if i == 0 {
                    out.insert(0, 1);
                    out.pop();
                    exponent += 1;
                    break;
                }
                i -= 1;
                if out[i] == 9 {
                    out[i] = 0;
                } else {
                    out[i] += 1;
                    break;
                }
            }
        }
        let mantissa: String = out.iter().map(|d| char::from(b'0' + d)).collect();
        let sign = if negative { "-" } else { "" };
        if (-5..digits as i32).contains(&exponent) {
            if exponent >= 0 {
                let split = exponent as usize + 1;
                format!("{sign}{}.{}", &mantissa[..split], &mantissa[split..])
            } else {
                let zeros = "0".repeat((-exponent - 1) as usize);
                format!("{sign}0.{zeros}{mantissa}")
            }
        } else {
            format!("{sign}{}.{}e{exponent}", &mantissa[..1], &mantissa[1..])
        }
    }

    fn ldexp(self, k: i32) -> Self {
        let s = 2f64.powi(k);
        Self { hi: self.hi * s, lo: self.lo * s }
    }

    fn mul_exact_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }

    fn div_small(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let r = self - DoubleDouble::from_prod(q1, b);
        let q2 = r.hi / b;
        let r = r - DoubleDouble::from_prod(q2, b);
        let q3 = r.hi / b;
        let (q1, q2) = quick_two_sum(q1, q2);
        Self::new(q1, q2) + Self::from_f64(q3)
    }

    fn recip(self) -> Self {
        Self::from_f64(1.0) / self
    }

    /// `exp(x) - 1` for |x| small enough that no range reduction by ln 2 is
    /// needed; accurate relative to the result.
    fn exp_m1_reduced(self) -> Self {
        const HALVINGS: i32 = 8;
        let r = self.ldexp(-HALVINGS);
        let mut sum = r;
        let mut term = r;
        let mut n = 1.0;
        loop {
            n += 1.0;
            term = (term * r).div_small(n);
            sum = sum + term;
            if term.hi.abs() <= SERIES_CUTOFF * sum.hi.abs() || n > 40.0 {
                break;
            }
        }
        // expm1(2y) = expm1(y) * (expm1(y) + 2)
        for _ in 0..HALVINGS {
            sum = sum * (sum + Self::from_f64(2.0));
        }
        sum
    }

    /// `2 atanh(z) = ln((1+z)/(1-z))` by its odd power series, |z| < 1/7.
    fn two_atanh_series(z: Self) -> Self {
        let z2 = z * z;
        let mut pow = z;
        let mut sum = z;
        let mut k = 1.0;
        loop {
            k += 2.0;
            pow = pow * z2;
            let term = pow.div_small(k);
            sum = sum + term;
            if term.hi.abs() <= SERIES_CUTOFF * sum.hi.abs() || k > 200.0 {
                break;
            }
        }
        sum.mul_exact_f64(2.0)
    }

    /// sin and cos of |r| <= pi/4 by Taylor series.
    fn sin_cos_reduced(r: Self) -> (Self, Self) {
        let r2 = r * r;
        let mut s = r;
        let mut term = r;
        let mut k = 1.0;
        loop {
            term = -(term * r2).div_small((k + 1.0) * (k + 2.0));
            k += 2.0;
            s = s + term;
            if term.hi.abs() <= SERIES_CUTOFF * s.hi.abs() || k > 60.0 {
                break;
            }
        }
        let one = Self::from_f64(1.0);
        let mut c = one;
        let mut term = one;
        let mut k = 0.0;
        loop {
            term = -(term * r2).div_small((k + 1.0) * (k + 2.0));
            k += 2.0;
            c = c + term;
            if term.hi.abs() <= SERIES_CUTOFF * c.hi.abs() || k > 60.0 {
                break;
            }
        }
        (s, c)
    }
}

impl fmt::Display for DoubleDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e} + {:e}", self.hi, self.lo)
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;

    #[inline]
    fn neg(self) -> Self {
        Self { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for DoubleDouble {
    type Output = Self;

    #[inline]
    fn add(self, b: Self) -> Self {
        let (s1, s2) = two_sum(self.hi, b.hi);
        if !s1.is_finite() {
            return Self::from_f64(s1);
        }
        let (t1, t2) = two_sum(self.lo, b.lo);
        let s2 = s2 + t1;
        let (s1, s2) = quick_two_sum(s1, s2);
        let s2 = s2 + t2;
        let (hi, lo) = quick_two_sum(s1, s2);
        Self { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;

    #[inline]
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;

    #[inline]
    fn mul(self, b: Self) -> Self {
        let (p, e) = two_prod(self.hi, b.hi);
        if !p.is_finite() {
            return Self::from_f64(p);
        }
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;

    fn div(self, b: Self) -> Self {
        let q1 = self.hi / b.hi;
        if !q1.is_finite() || q1 == 0.0 {
            return Self::from_f64(q1);
        }
        let r = self - b.mul_exact_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_exact_f64(q2);
        let q3 = r.hi / b.hi;
        let (q1, q2) = quick_two_sum(q1, q2);
        Self::new(q1, q2) + Self::from_f64(q3)
    }
}

impl Real for DoubleDouble {
    const UNIT_ROUNDOFF: f64 = 1.232_595_164_407_831e-32; // 2^-106

    #[inline]
    fn from_f64(v: f64) -> Self {
        Self { hi: v, lo: 0.0 }
    }

    fn from_parts(hi: f64, lo: f64) -> Self {
        Self::from_sum(hi, lo)
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn pi() -> Self {
        Self::new(PI[0], PI[1])
    }

    fn frac_pi_2() -> Self {
        Self::new(HALF_PI[0], HALF_PI[1])
    }

    fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Self::from_f64(if self.hi == 0.0 { 0.0 } else { f64::NAN });
        }
        let x = 1.0 / self.hi.sqrt();
        let ax = self.hi * x;
        let resid = self - Self::from_prod(ax, ax);
        Self::from_f64(ax) + Self::from_f64(resid.hi * (x * 0.5))
    }

    fn exp(self) -> Self {
        if self.hi > 709.78 {
            return Self::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Self::from_f64(0.0);
        }
        let k = (self.hi / LN2[0]).round();
        let r = self - Self::from_prod(k, LN2[0]) - Self::from_prod(k, LN2[1]) - Self::from_prod(k, LN2[2]);
        let e = r.exp_m1_reduced() + Self::from_f64(1.0);
        e.ldexp(k as i32)
    }

    fn exp_m1(self) -> Self {
        if self.hi.abs() < 0.5 {
            self.exp_m1_reduced()
        } else {
            self.exp() - Self::from_f64(1.0)
        }
    }

    fn ln(self) -> Self {
        if self.hi <= 0.0 || self.hi.is_nan() {
            return Self::from_f64(if self.hi == 0.0 { f64::NEG_INFINITY } else { f64::NAN });
        }
        if self.hi.is_infinite() {
            return self;
        }
        let u = self - Self::from_f64(1.0);
        if u.hi.abs() < 0.25 {
            return u.ln_1p();
        }
        let y = Self::from_f64(self.hi.ln());
        y + self * (-y).exp() - Self::from_f64(1.0)
    }

    fn ln_1p(self) -> Self {
        if self.hi.abs() < 0.25 {
            let z = self / (Self::from_f64(2.0) + self);
            Self::two_atanh_series(z)
        } else {
            (self + Self::from_f64(1.0)).ln()
        }
    }

    fn sin_cos(self) -> (Self, Self) {
        if !self.hi.is_finite() {
            return (Self::from_f64(f64::NAN), Self::from_f64(f64::NAN));
        }
        let k = (self.hi / HALF_PI[0]).round();
        let r = self - Self::from_prod(k, HALF_PI[0]) - Self::from_prod(k, HALF_PI[1]) - Self::from_prod(k, HALF_PI[2]);
        let (s, c) = Self::sin_cos_reduced(r);
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    fn atan(self) -> Self {
        let y = Self::from_f64(self.hi.atan());
        let (s, c) = y.sin_cos();
        y - (s - self * c) / (c + self * s)
    }

    fn asin(self) -> Self {
        let one = Self::from_f64(1.0);
        let a = self.abs();
        if a.hi > 1.0 {
            return Self::from_f64(f64::NAN);
        }
        if a == one {
            return if self.hi > 0.0 { Self::frac_pi_2() } else { -Self::frac_pi_2() };
        }
        let denom = ((one - self) * (one + self)).sqrt();
        (self / denom).atan()
    }

    fn acos(self) -> Self {
        let one = Self::from_f64(1.0);
        if self.hi > 0.5 {
            ((one - self).ldexp(-1)).sqrt().asin().ldexp(1)
        } else if self.hi < -0.5 {
            Self::pi() - ((one + self).ldexp(-1)).sqrt().asin().ldexp(1)
        } else {
            Self::frac_pi_2() - self.asin()
        }
    }

    fn sinh(self) -> Self {
        if self.hi.abs() < 0.5 {
            let em = self.exp_m1();
            (em + em / (em + Self::from_f64(1.0))).ldexp(-1)
        } else {
            let e = self.exp();
            (e - e.recip()).ldexp(-1)
        }
    }

    fn cosh(self) -> Self {
        let e = self.exp();
        (e + e.recip()).ldexp(-1)
    }

    fn acosh(self) -> Self {
        let one = Self::from_f64(1.0);
        if self.hi < 1.0 {
            return Self::from_f64(f64::NAN);
        }
        let am1 = self - one;
        (am1 + (am1 * (self + one)).sqrt()).ln_1p()
    }

    fn mul_f64(self, k: f64) -> Self {
        self.mul_exact_f64(k)
    }

    fn div_f64(self, k: f64) -> Self {
        self.div_small(k)
    }
}
