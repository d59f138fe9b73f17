//! Exact rationals in lowest terms.
//!
//! Every certified value in the crate (window endpoints, LP optima, cubic
//! root brackets) is a [`Fraction`]. The textual form is `p/q`, or just `p`
//! when the denominator is one; serde uses the same string.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Fraction(BigRational);

impl Fraction {
    /// `numer / denom`; panics on a zero denominator.
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Fraction(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Fraction(BigRational::new(numer, denom))
    }

    pub fn from_int<T: Into<BigInt>>(value: T) -> Self {
        Fraction(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        Fraction(BigRational::zero())
    }

    pub fn one() -> Self {
        Fraction(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn abs(&self) -> Self {
        Fraction(self.0.abs())
    }

    pub fn pow(&self, exp: i32) -> Self {
        Fraction(num_traits::Pow::pow(&self.0, exp))
    }

    /// Integer value, if this fraction is integral and fits in `u64`.
    pub fn to_u64(&self) -> Option<u64> {
        if self.is_integer() {
            self.numer().to_u64()
        } else {
            None
        }
    }

    pub fn to_u128(&self) -> Option<u128> {
        if self.is_integer() {
            self.numer().to_u128()
        } else {
            None
        }
    }

    /// Lossy conversion for display and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Fraction>>(values: I) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, f| acc.lcm(f.denom()))
}

impl From<BigRational> for Fraction {
    fn from(value: BigRational) -> Self {
        Fraction(value)
    }
}

impl From<u64> for Fraction {
    fn from(value: u64) -> Self {
        Fraction::from_int(value)
    }
}

impl From<i64> for Fraction {
    fn from(value: i64) -> Self {
        Fraction::from_int(value)
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Fraction::from_big(n, d))
            }
            None => Ok(Fraction::from_int(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Fraction> for Fraction {
            type Output = Fraction;
            fn $method(self, rhs: Fraction) -> Fraction {
                Fraction($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a Fraction> for Fraction {
            type Output = Fraction;
            fn $method(self, rhs: &'a Fraction) -> Fraction {
                Fraction($trait::$method(self.0, &rhs.0))
            }
        }
        impl<'a> $trait<Fraction> for &'a Fraction {
            type Output = Fraction;
            fn $method(self, rhs: Fraction) -> Fraction {
                Fraction($trait::$method(&self.0, rhs.0))
            }
        }
        impl<'a, 'b> $trait<&'b Fraction> for &'a Fraction {
            type Output = Fraction;
            fn $method(self, rhs: &'b Fraction) -> Fraction {
                Fraction($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl<'a> std::ops::AddAssign<&'a Fraction> for Fraction {
    fn add_assign(&mut self, rhs: &'a Fraction) {
        self.0 += &rhs.0;
    }
}

impl Neg for Fraction {
    type Output = Fraction;
    fn neg(self) -> Fraction {
        Fraction(-self.0)
    }
}

impl Neg for &Fraction {
    type Output = Fraction;
    fn neg(self) -> Fraction {
        Fraction(-&self.0)
    }
}

impl std::iter::Sum for Fraction {
    fn sum<I: Iterator<Item = Fraction>>(iter: I) -> Self {
        iter.fold(Fraction::zero(), |a, b| a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_reduces() {
        assert_eq!(Fraction::new(6, 4).to_string(), "3/2");
        assert_eq!(Fraction::new(4, 2).to_string(), "2");
        assert_eq!(Fraction::new(3, -6).to_string(), "-1/2");
    }

    #[test]
    fn parse_round_trip() {
        for s in ["4/3", "1", "-7/9", "0"] {
            let f: Fraction = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("1/0".parse::<Fraction>().is_err());
        assert!("x".parse::<Fraction>().is_err());
    }

    #[test]
    fn floor_ceil() {
        let f = Fraction::new(7, 3);
        assert_eq!(f.floor(), BigInt::from(2));
        assert_eq!(f.ceil(), BigInt::from(3));
        assert_eq!(Fraction::new(-7, 3).floor(), BigInt::from(-3));
    }

    #[test]
    fn common_denominator_is_lcm() {
        let v = [Fraction::new(1, 4), Fraction::new(1, 6), Fraction::new(2, 1)];
        assert_eq!(common_denominator(&v), BigInt::from(12));
    }
}
