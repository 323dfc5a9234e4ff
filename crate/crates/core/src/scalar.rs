//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! Scores and weights are generic over [`Scalar`], implemented for `f32`,
//! `f64` and [`Rational`] (arbitrary-precision fractions). Rational mode gives
//! exact answers on small graphs and is what the oracle tests lean on.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_traits::{Num, Signed, ToPrimitive};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Relative/absolute tolerance used when comparing floating-point scores.
///
/// Two values `x`, `y` are equal when `|x - y| <= max(abs, rel * max(|x|, |y|))`.
/// Exact scalar types ignore the tolerance and compare with `==`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

impl Tolerance {
    pub const fn new(rel: f64, abs: f64) -> Self {
        Self { rel, abs }
    }

    /// Purely relative tolerance with the default absolute floor.
    pub const fn relative(rel: f64) -> Self {
        Self { rel, abs: 1e-12 }
    }

    pub fn admits(&self, x: f64, y: f64) -> bool {
        let scale = x.abs().max(y.abs());
        (x - y).abs() <= self.abs.max(self.rel * scale)
    }
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            rel: 1e-9,
            abs: 1e-12,
        }
    }
}

/// Numeric field used for weights, scores and linear solves.
pub trait Scalar:
    Clone + Debug + Display + PartialOrd + Num + Signed + Send + Sync + 'static
{
    /// `true` when arithmetic is exact and tolerances are irrelevant.
    const EXACT: bool;

    /// Converts from `f64`. Exact types take the exact binary value.
    fn from_f64(x: f64) -> Self;

    fn to_f64(&self) -> f64;

    /// Parses a decimal literal such as `0.9` or `2.5e-3`. Exact types keep it exact.
    fn parse_decimal(text: &str) -> Option<Self> {
        text.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .map(Self::from_f64)
    }

    fn from_u128(n: u128) -> Self;

    fn from_u64(n: u64) -> Self {
        Self::from_u128(n as u128)
    }

    fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool {
        if Self::EXACT {
            self == other
        } else {
            tol.admits(self.to_f64(), other.to_f64())
        }
    }

    /// `self^exp` by repeated squaring.
    fn powu(&self, exp: u32) -> Self {
        num_traits::pow::pow(self.clone(), exp as usize)
    }

    fn is_finite_value(&self) -> bool {
        true
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_f64(x: f64) -> Self {
        x
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn from_u128(n: u128) -> Self {
        n as f64
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_f64(x: f64) -> Self {
        x as f32
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }

    fn from_u128(n: u128) -> Self {
        n as f32
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_f64(x: f64) -> Self {
        Rational::from_float(x).expect("finite weight or decay factor")
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn parse_decimal(text: &str) -> Option<Self> {
        let (mantissa, exp) = match text.split_once(['e', 'E']) {
            Some((m, e)) => (m, e.parse::<i32>().ok()?),
            None => (text, 0),
        };
        let (negative, mantissa) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
        if int.is_empty() && frac.is_empty()
            || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
        {
            return None;
        }
        let digits: BigInt = format!("0{int}{frac}").parse().ok()?;
        let scale = exp - i32::try_from(frac.len()).ok()?;
        let ten = Rational::from_integer(BigInt::from(10));
        let factor = if scale >= 0 {
            num_traits::pow::pow(ten, scale as usize)
        } else {
            num_traits::pow::pow(ten, scale.unsigned_abs() as usize).recip()
        };
        let x = Rational::from_integer(digits) * factor;
        Some(if negative { -x } else { x })
    }

    fn from_u128(n: u128) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}

/// Builds `num / den` in any scalar type.
pub fn ratio<S: Scalar>(num: u64, den: u64) -> S {
    S::from_u64(num) / S::from_u64(den)
}

/// Shorthand for exact rationals in tests and fixtures.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_has_absolute_floor() {
        let tol = Tolerance::default();
        assert!(tol.admits(0.0, 5e-13));
        assert!(!tol.admits(0.0, 5e-12));
        assert!(tol.admits(1e6, 1e6 + 1e-4));
        assert!(!tol.admits(1e6, 1e6 + 1e-2));
    }

    #[test]
    fn rationals_compare_exactly() {
        let third = rational(1, 3);
        let approx = Rational::from_f64(1.0 / 3.0);
        assert!(!third.approx_eq(&approx, Tolerance::new(1.0, 1.0)));
        assert!(third.approx_eq(&rational(2, 6), Tolerance::new(0.0, 0.0)));
    }

    #[test]
    fn powers() {
        assert_eq!(3.0f64.powu(0), 1.0);
        assert_eq!(rational(1, 2).powu(3), rational(1, 8));
    }

    #[test]
    fn exact_decimals() {
        assert_eq!(Rational::parse_decimal("0.9"), Some(rational(9, 10)));
        assert_eq!(Rational::parse_decimal("-2.5e-1"), Some(rational(-1, 4)));
        assert_eq!(Rational::parse_decimal("3"), Some(rational(3, 1)));
        assert_eq!(Rational::parse_decimal(".5"), Some(rational(1, 2)));
        assert_eq!(Rational::parse_decimal("1.2E2"), Some(rational(120, 1)));
        for bad in ["", ".", "abc", "1.2.3", "1e", "nan", "inf"] {
            assert_eq!(Rational::parse_decimal(bad), None, "{bad}");
        }
        assert_eq!(f64::parse_decimal("0.25"), Some(0.25));
        assert_eq!(f64::parse_decimal("inf"), None);
    }
}
