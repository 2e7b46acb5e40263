//! Arbitrary-precision rational scalars.
//!
//! `Scalar` is the only number type in the engine: every quantity that the
//! toolkit manipulates (structure constants, cocycle coefficients,
//! determinants, failure bounds) is an exact rational. Values are always kept
//! in canonical form: positive denominator, gcd(numerator, denominator) = 1.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational number in canonical reduced form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `p/q` from machine integers. Panics if `q == 0`; intended for literals.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// `p/q` from big integers, canonicalized. Fails on zero denominator.
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self, ScalarParseError> {
        if denom.is_zero() {
            return Err(ScalarParseError::ZeroDenominator);
        }
        Ok(Scalar(BigRational::new(numer, denom)))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Scalar(BigRational::from_integer(n))
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Scalar(self.0.recip()))
        }
    }

    /// Integer power with negative exponents allowed. Panics on `0^-k`.
    pub fn pow(&self, exp: i32) -> Self {
        if exp < 0 {
            assert!(!self.is_zero(), "zero to a negative power");
        }
        Scalar(self.0.pow(exp))
    }

    /// Value as `usize` when it is a small non-negative integer.
    pub fn to_usize(&self) -> Option<usize> {
        if !self.0.is_integer() || self.0.is_negative() {
            return None;
        }
        let digits = self.0.numer().to_u64_digits().1;
        match digits.len() {
            0 => Some(0),
            1 => usize::try_from(digits[0]).ok(),
            _ => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Parse failure for the textual `p/q` scalar format.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarParseError {
    #[error("empty scalar literal")]
    Empty,
    #[error("malformed scalar literal: {0:?}")]
    Malformed(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

impl FromStr for Scalar {
    type Err = ScalarParseError;

    /// Accepts `p` or `p/q` with an optional leading sign; `q` is a plain
    /// positive integer literal.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ScalarParseError::Empty);
        }
        let (num_str, den_str) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let numer = BigInt::from_str(num_str)
            .map_err(|_| ScalarParseError::Malformed(s.to_string()))?;
        let denom = match den_str {
            None => BigInt::one(),
            Some(d) => {
                if d.starts_with('+') || d.starts_with('-') {
                    return Err(ScalarParseError::Malformed(s.to_string()));
                }
                BigInt::from_str(d).map_err(|_| ScalarParseError::Malformed(s.to_string()))?
            }
        };
        Scalar::new(numer, denom)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                Scalar((self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        Scalar(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        Scalar(&self.0 / &rhs.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl<'a> Neg for &'a Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "1", "-1", "3/4", "-3/4", "27/200", "1/420", "+5"] {
            let v: Scalar = s.parse().unwrap();
            let back: Scalar = v.to_string().parse().unwrap();
            assert_eq!(v, back);
        }
        assert_eq!("6/4".parse::<Scalar>().unwrap(), Scalar::ratio(3, 2));
        assert_eq!("-6/4".parse::<Scalar>().unwrap(), Scalar::ratio(-3, 2));
        assert_eq!("+5".parse::<Scalar>().unwrap().to_string(), "5");
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!("".parse::<Scalar>().is_err());
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("a/b".parse::<Scalar>().is_err());
        assert!("1/-2".parse::<Scalar>().is_err());
        assert!("1/+2".parse::<Scalar>().is_err());
    }

    #[test]
    fn arithmetic_identities() {
        let half = Scalar::ratio(1, 2);
        let third = Scalar::ratio(1, 3);
        assert_eq!(&half + &third, Scalar::ratio(5, 6));
        assert_eq!(&half * &third, Scalar::ratio(1, 6));
        assert_eq!(&half - &half, Scalar::zero());
        assert_eq!(half.recip().unwrap(), Scalar::from_int(2));
        assert_eq!(Scalar::zero().recip(), None);
        assert_eq!(Scalar::ratio(-2, 3).pow(-2), Scalar::ratio(9, 4));
    }

    proptest! {
        // Every arithmetic result is in canonical reduced form.
        #[test]
        fn results_are_canonical(p in -1000i64..1000, q in 1i64..1000, r in -1000i64..1000, s in 1i64..1000) {
            let a = Scalar::ratio(p, q);
            let b = Scalar::ratio(r, s);
            for v in [&a + &b, &a - &b, &a * &b] {
                let g = num_integer::gcd(v.numerator().clone(), v.denominator().clone());
                prop_assert!(v.denominator() > &BigInt::from(0));
                prop_assert_eq!(g, BigInt::from(1));
            }
        }
    }
}
