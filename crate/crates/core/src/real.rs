//! Configurable-precision real scalars backed by MPFR.
//!
//! A [`Real`] carries its decimal precision `P` alongside the MPFR value.
//! Arithmetic between two reals is performed at the larger of the two
//! precisions, and printing round-trips at `P` significant digits.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::ops::{CompleteRound, Pow};
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// Minimum supported working precision in decimal digits.
pub const MIN_DIGITS: u32 = 30;

/// Guard bits kept on top of the requested decimal precision.
const GUARD_BITS: u32 = 24;

/// Binary precision backing `digits` decimal digits.
pub fn bits_for_digits(digits: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + GUARD_BITS
}

/// Arbitrary-precision real number tagged with its decimal precision.
#[derive(Clone, Debug)]
pub struct Real {
    f: Float,
    digits: u32,
}

impl Real {
    fn wrap(f: Float, digits: u32) -> Self {
        Real { f, digits }
    }

    pub fn zero(digits: u32) -> Self {
        Real::wrap(Float::new(bits_for_digits(digits)), digits)
    }

    pub fn from_i64(v: i64, digits: u32) -> Self {
        Real::wrap(Float::with_val(bits_for_digits(digits), v), digits)
    }

    pub fn from_u64(v: u64, digits: u32) -> Self {
        Real::wrap(Float::with_val(bits_for_digits(digits), v), digits)
    }

    pub fn from_f64(v: f64, digits: u32) -> Self {
        Real::wrap(Float::with_val(bits_for_digits(digits), v), digits)
    }

    pub fn from_integer(v: &Integer, digits: u32) -> Self {
        Real::wrap(Float::with_val(bits_for_digits(digits), v), digits)
    }

    pub fn from_rational(v: &Rational, digits: u32) -> Self {
        Real::wrap(Float::with_val(bits_for_digits(digits), v), digits)
    }

    /// Parse a decimal string at the given precision.
    pub fn parse(s: &str, digits: u32) -> Result<Self> {
        let inc = Float::parse(s).map_err(|e| Error::Config(format!("bad number {s:?}: {e}")))?;
        Ok(Real::wrap(Float::with_val(bits_for_digits(digits), inc), digits))
    }

    /// `num / den` evaluated at the given precision.
    pub fn ratio_u64(num: u64, den: u64, digits: u32) -> Self {
        let q = Rational::from((num, den));
        Real::from_rational(&q, digits)
    }

    pub fn pi(digits: u32) -> Self {
        Real::wrap(Float::with_val(bits_for_digits(digits), Constant::Pi), digits)
    }

    pub fn ln2(digits: u32) -> Self {
        Real::wrap(Float::with_val(bits_for_digits(digits), Constant::Log2), digits)
    }

    pub fn ln10(digits: u32) -> Self {
        let p = bits_for_digits(digits);
        Real::wrap(Float::with_val(p, 10).ln(), digits)
    }

    /// `10^(expo)`, used for tolerances of the form `10^(k - P)`.
    pub fn pow10(expo: i64, digits: u32) -> Self {
        let p = bits_for_digits(digits);
        Real::wrap(Float::with_val(p, Float::i_pow_u(10, 1)).pow(expo as i32), digits)
    }

    /// The workhorse tolerance `10^(k - P)` at this value's precision.
    pub fn tol(digits: u32, k: i64) -> Self {
        Real::pow10(k - digits as i64, digits)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn bits(&self) -> u32 {
        self.f.prec()
    }

    pub fn as_float(&self) -> &Float {
        &self.f
    }

    pub fn into_float(self) -> Float {
        self.f
    }

    pub fn from_float(f: Float, digits: u32) -> Self {
        Real::wrap(f, digits)
    }

    pub fn to_f64(&self) -> f64 {
        self.f.to_f64()
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.f.is_finite()
    }

    pub fn is_sign_negative(&self) -> bool {
        self.f.is_sign_negative()
    }

    fn out_prec(&self, other: &Real) -> (u32, u32) {
        let digits = self.digits.max(other.digits);
        (bits_for_digits(digits), digits)
    }

    pub fn sqrt(&self) -> Real {
        Real::wrap(self.f.sqrt_ref().complete(self.f.prec()), self.digits)
    }

    pub fn square(&self) -> Real {
        Real::wrap(self.f.square_ref().complete(self.f.prec()), self.digits)
    }

    pub fn exp(&self) -> Real {
        Real::wrap(self.f.exp_ref().complete(self.f.prec()), self.digits)
    }

    pub fn exp_m1(&self) -> Real {
        Real::wrap(self.f.exp_m1_ref().complete(self.f.prec()), self.digits)
    }

    pub fn ln(&self) -> Real {
        Real::wrap(self.f.ln_ref().complete(self.f.prec()), self.digits)
    }

    pub fn sin(&self) -> Real {
        Real::wrap(self.f.sin_ref().complete(self.f.prec()), self.digits)
    }

    pub fn cos(&self) -> Real {
        Real::wrap(self.f.cos_ref().complete(self.f.prec()), self.digits)
    }

    pub fn sinh(&self) -> Real {
        Real::wrap(self.f.sinh_ref().complete(self.f.prec()), self.digits)
    }

    pub fn cosh(&self) -> Real {
        Real::wrap(self.f.cosh_ref().complete(self.f.prec()), self.digits)
    }

    pub fn atan(&self) -> Real {
        Real::wrap(self.f.atan_ref().complete(self.f.prec()), self.digits)
    }

    /// `atan2(self, x)` with `self` as the ordinate.
    pub fn atan2(&self, x: &Real) -> Real {
        let (p, d) = self.out_prec(x);
        Real::wrap(self.f.atan2_ref(&x.f).complete(p), d)
    }

    pub fn hypot(&self, other: &Real) -> Real {
        let (p, d) = self.out_prec(other);
        Real::wrap(self.f.hypot_ref(&other.f).complete(p), d)
    }

    pub fn abs(&self) -> Real {
        Real::wrap(self.f.abs_ref().complete(self.f.prec()), self.digits)
    }

    pub fn recip(&self) -> Real {
        Real::wrap(self.f.recip_ref().complete(self.f.prec()), self.digits)
    }

    pub fn floor(&self) -> Real {
        Real::wrap(self.f.floor_ref().complete(self.f.prec()), self.digits)
    }

    pub fn powi(&self, e: i64) -> Real {
        Real::wrap((&self.f).pow(e as i32).complete(self.f.prec()), self.digits)
    }

    pub fn pow(&self, e: &Real) -> Real {
        let (p, d) = self.out_prec(e);
        Real::wrap((&self.f).pow(&e.f).complete(p), d)
    }

    /// Exact multiplication by `2^k`.
    pub fn mul_2exp(&self, k: i32) -> Real {
        let mut f = self.f.clone();
        if k >= 0 {
            f <<= k as u32;
        } else {
            f >>= (-k) as u32;
        }
        Real::wrap(f, self.digits)
    }

    pub fn max(&self, other: &Real) -> Real {
        if self.f >= other.f {
            self.clone()
        } else {
            other.clone()
        }
    }

    pub fn min(&self, other: &Real) -> Real {
        if self.f <= other.f {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Decimal string at exactly `P` significant digits (round-trip form).
    pub fn to_decimal_string(&self) -> String {
        format_float(&self.f, self.digits as usize)
    }
}

/// Deterministic scientific-notation formatting at `digits` significant digits.
pub fn format_float(f: &Float, digits: usize) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    if !f.is_finite() {
        return if f.is_nan() {
            "nan".to_string()
        } else if f.is_sign_negative() {
            "-inf".to_string()
        } else {
            "inf".to_string()
        };
    }
    let (sign, mantissa, exp) = to_parts(f, digits);
    let mut out = String::new();
    if sign {
        out.push('-');
    }
    out.push(&mantissa[0..1].chars().next().unwrap().to_string().parse::<char>().unwrap());
    if mantissa.len() > 1 {
        out.push('.');
        out.push_str(&mantissa[1..]);
    }
    out.push('e');
    out.push_str(&(exp - 1).to_string());
    out
}

fn to_parts(f: &Float, digits: usize) -> (bool, String, i64) {
    let (s, exp) = f.to_string_radix(10, Some(digits.max(2)));
    let neg = s.starts_with('-');
    let body: String = s.chars().filter(|c| c.is_ascii_digit()).collect();
    let exp = exp.map(|e| e as i64).unwrap_or(0);
    (neg, body, exp)
}

macro_rules! real_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                let (p, d) = self.out_prec(rhs);
                Real::wrap((&self.f $op &rhs.f).complete(p), d)
            }
        }
        impl $trait<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl $trait<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
    };
}

real_binop!(Add, add, +);
real_binop!(Sub, sub, -);
real_binop!(Mul, mul, *);
real_binop!(Div, div, /);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap((-&self.f).complete(self.f.prec()), self.digits)
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.f == other.f
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.f.partial_cmp(&other.f)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        w.write_str(&self.to_decimal_string())
    }
}

/// Neumaier-compensated accumulator used for reproducible partial sums.
///
/// Summation order is always the caller's (ascending index); the
/// compensation keeps the result independent of intermediate magnitudes.
pub struct CompensatedSum {
    sum: Float,
    comp: Float,
    digits: u32,
}

impl CompensatedSum {
    pub fn new(digits: u32) -> Self {
        let p = bits_for_digits(digits);
        CompensatedSum {
            sum: Float::new(p),
            comp: Float::new(p),
            digits,
        }
    }

    pub fn add(&mut self, term: &Real) {
        let p = self.sum.prec();
        let t = Float::with_val(p, term.as_float());
        let new_sum = Float::with_val(p, &self.sum + &t);
        // Neumaier update: recover the rounding error of the addition.
        let err = if self.sum.clone().abs() >= t.clone().abs() {
            Float::with_val(p, &self.sum - &new_sum) + &t
        } else {
            Float::with_val(p, &t - &new_sum) + &self.sum
        };
        self.comp += err;
        self.sum = new_sum;
    }

    pub fn value(&self) -> Real {
        let p = self.sum.prec();
        Real::from_float(Float::with_val(p, &self.sum + &self.comp), self.digits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_precision_propagates() {
        let a = Real::from_i64(1, 30);
        let b = Real::from_i64(3, 60);
        let c = &a / &b;
        assert_eq!(c.digits(), 60);
        assert_eq!(c.bits(), bits_for_digits(60));
    }

    #[test]
    fn decimal_string_round_trips() {
        let x = Real::pi(45);
        let s = x.to_decimal_string();
        let y = Real::parse(&s, 45).unwrap();
        let diff = (&x - &y).abs();
        assert!(diff < Real::tol(45, 2), "{s} -> {diff}");
    }

    #[test]
    fn pow10_matches_tol() {
        let t = Real::tol(40, 5);
        let want = Real::parse("1e-35", 40).unwrap();
        assert_eq!(t.partial_cmp(&want), Some(Ordering::Equal));
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let d = 30;
        let mut acc = CompensatedSum::new(d);
        let big = Real::pow10(25, d);
        let tiny = Real::pow10(-8, d);
        acc.add(&big);
        for _ in 0..1000 {
            acc.add(&tiny);
        }
        acc.add(&(-&big));
        let got = acc.value();
        let want = Real::parse("1e-5", d).unwrap();
        let rel = ((&got - &want) / &want).abs();
        assert!(rel < Real::tol(d, 6), "rel = {rel}");
    }
}
