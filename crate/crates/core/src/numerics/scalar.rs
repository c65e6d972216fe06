//! Arbitrary-precision real scalar.
//!
//! `Scalar` wraps an MPFR float. Binary operations round to the smaller of
//! the two operand precisions, so mixing a 512-bit and a 256-bit value never
//! claims more accuracy than the coarser input carries.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// Working precision used when nothing else is requested.
pub const DEFAULT_PRECISION: u32 = 256;

#[derive(Clone, PartialEq, PartialOrd)]
pub struct Scalar(Float);

impl Scalar {
    pub fn from_f64(prec: u32, value: f64) -> Self {
        Scalar(Float::with_val(prec, value))
    }

    pub fn from_int(prec: u32, value: i64) -> Self {
        Scalar(Float::with_val(prec, value))
    }

    pub fn from_integer(prec: u32, value: &Integer) -> Self {
        Scalar(Float::with_val(prec, value))
    }

    pub fn from_rational(prec: u32, value: &Rational) -> Self {
        Scalar(Float::with_val(prec, value))
    }

    pub fn from_float(value: Float) -> Self {
        Scalar(value)
    }

    pub fn zero(prec: u32) -> Self {
        Scalar(Float::new(prec))
    }

    pub fn one(prec: u32) -> Self {
        Scalar::from_int(prec, 1)
    }

    pub fn pi(prec: u32) -> Self {
        Scalar(Float::with_val(prec, Constant::Pi))
    }

    /// `n!` rounded to `prec` bits.
    pub fn factorial(prec: u32, n: u32) -> Self {
        Scalar(Float::with_val(prec, Float::factorial(n)))
    }

    /// Parses a decimal literal such as `0.7` or `-1.25e-3`.
    pub fn parse_decimal(prec: u32, text: &str) -> Option<Self> {
        Float::parse(text.trim())
            .ok()
            .map(|p| Scalar(Float::with_val(prec, p)))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    /// Same value re-rounded to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        Scalar(Float::with_val(prec, &self.0))
    }

    pub fn as_float(&self) -> &Float {
        &self.0
    }

    pub fn into_float(self) -> Float {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }

    /// Exact rational value of the binary float (None for NaN/inf).
    pub fn to_rational(&self) -> Option<Rational> {
        self.0.to_rational()
    }

    pub fn abs(&self) -> Self {
        Scalar(Float::with_val(self.prec(), self.0.abs_ref()))
    }

    pub fn sin(&self) -> Self {
        Scalar(Float::with_val(self.prec(), self.0.sin_ref()))
    }

    pub fn cos(&self) -> Self {
        Scalar(Float::with_val(self.prec(), self.0.cos_ref()))
    }

    pub fn sqrt(&self) -> Self {
        Scalar(Float::with_val(self.prec(), self.0.sqrt_ref()))
    }

    pub fn ln(&self) -> Self {
        Scalar(Float::with_val(self.prec(), self.0.ln_ref()))
    }

    pub fn recip(&self) -> Self {
        Scalar(Float::with_val(self.prec(), self.0.recip_ref()))
    }

    pub fn powi(&self, exp: i32) -> Self {
        Scalar(Float::with_val(self.prec(), (&self.0).pow(exp)))
    }

    pub fn mul_int(&self, k: i64) -> Self {
        Scalar(Float::with_val(self.prec(), &self.0 * k))
    }

    pub fn div_int(&self, k: i64) -> Self {
        Scalar(Float::with_val(self.prec(), &self.0 / k))
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    /// `2^exp` at the given precision.
    pub fn exp2(prec: u32, exp: i32) -> Self {
        Scalar(Float::with_val(prec, Float::i_exp(1, exp)))
    }

    /// Decimal rendering with as many significant digits as the precision
    /// supports.
    pub fn to_decimal_string(&self) -> String {
        let digits = (self.prec() as f64 * std::f64::consts::LOG10_2).floor() as usize;
        self.to_decimal_digits(digits.max(1))
    }

    pub fn to_decimal_digits(&self, digits: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.0.to_string_radix(10, Some(digits))
    }

    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self.to_decimal_digits(24))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "{}", self.to_decimal_digits(p.max(1))),
            None => write!(f, "{}", self.to_decimal_string()),
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                let prec = self.prec().min(rhs.prec());
                Scalar(Float::with_val(prec, &self.0 $op &rhs.0))
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(Float::with_val(self.prec(), -&self.0))
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

/// Tolerance used by the built-in identity checks: `2^(-prec/2) * size^2`.
pub fn check_tolerance(prec: u32, size: usize) -> f64 {
    let base = 2f64.powi(-(prec as i32) / 2);
    base * (size.max(1) * size.max(1)) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_is_min_of_operands() {
        let a = Scalar::from_int(512, 3);
        let b = Scalar::from_int(128, 7);
        assert_eq!((&a + &b).prec(), 128);
        assert_eq!((&a * &b).prec(), 128);
        assert_eq!((&b / &a).prec(), 128);
    }

    #[test]
    fn arithmetic_is_deterministic() {
        let x = Scalar::from_f64(256, 0.7);
        let y = Scalar::from_f64(256, 1.3);
        let p = (&x.sin() * &y.cos()) / (&x + &y);
        let q = (&x.sin() * &y.cos()) / (&x + &y);
        assert_eq!(p, q);
    }

    #[test]
    fn factorial_is_exact_when_representable() {
        assert_eq!(Scalar::factorial(256, 20).to_f64(), 2432902008176640000.0);
        assert_eq!(Scalar::factorial(256, 0).to_f64(), 1.0);
    }

    #[test]
    fn decimal_round_trip() {
        let x = Scalar::parse_decimal(256, "0.125").unwrap();
        assert_eq!(x.to_f64(), 0.125);
        assert!(Scalar::parse_decimal(256, "abc").is_none());
    }
}
