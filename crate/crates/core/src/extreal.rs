//! Exact arithmetic on the extended nonnegative reals `[0, +inf]`.
//!
//! Finite values are arbitrary-precision rationals kept in lowest terms, so
//! equality is structural. Addition is absorbing at infinity and
//! multiplication follows the measure-theoretic convention `0 * inf = 0`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtRealError {
    #[error("undefined difference {minuend} - {subtrahend}")]
    UndefinedDifference { minuend: Box<ExtReal>, subtrahend: Box<ExtReal> },
    #[error("empty list")]
    EmptyList,
    #[error("negative value {0}")]
    Negative(String),
    #[error("cannot parse extended real from {0:?}")]
    Parse(String),
}

/// An element of `[0, +inf]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtReal {
    Finite(BigRational),
    Infinity,
}

impl ExtReal {
    pub fn zero() -> Self {
        ExtReal::Finite(BigRational::zero())
    }

    pub fn one() -> Self {
        ExtReal::Finite(BigRational::one())
    }

    pub fn infinity() -> Self {
        ExtReal::Infinity
    }

    pub fn from_integer(n: u64) -> Self {
        ExtReal::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den` in lowest terms. Panics if `den == 0`.
    pub fn ratio(num: u64, den: u64) -> Self {
        assert!(den != 0, "zero denominator");
        ExtReal::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Wraps a rational, rejecting negative values.
    pub fn from_rational(q: BigRational) -> Result<Self, ExtRealError> {
        if q.is_negative() {
            Err(ExtRealError::Negative(q.to_string()))
        } else {
            Ok(ExtReal::Finite(q))
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtReal::Infinity)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtReal::Finite(q) if q.is_zero())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExtReal::Finite(q) => Some(q),
            ExtReal::Infinity => None,
        }
    }

    pub fn numer(&self) -> Option<&BigInt> {
        self.as_rational().map(|q| q.numer())
    }

    pub fn denom(&self) -> Option<&BigInt> {
        self.as_rational().map(|q| q.denom())
    }

    pub fn add(&self, other: &ExtReal) -> ExtReal {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a + b),
            _ => ExtReal::Infinity,
        }
    }

    pub fn mul(&self, other: &ExtReal) -> ExtReal {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a * b),
            (ExtReal::Finite(a), ExtReal::Infinity) | (ExtReal::Infinity, ExtReal::Finite(a)) => {
                if a.is_zero() {
                    ExtReal::zero()
                } else {
                    ExtReal::Infinity
                }
            }
            (ExtReal::Infinity, ExtReal::Infinity) => ExtReal::Infinity,
        }
    }

    /// Truncated difference `self - other`, defined only when `other` is
    /// finite and `other <= self`.
    pub fn sub_partial(&self, other: &ExtReal) -> Result<ExtReal, ExtRealError> {
        let undefined = || ExtRealError::UndefinedDifference {
            minuend: Box::new(self.clone()),
            subtrahend: Box::new(other.clone()),
        };
        match (self, other) {
            (_, ExtReal::Infinity) => Err(undefined()),
            (ExtReal::Infinity, ExtReal::Finite(_)) => Ok(ExtReal::Infinity),
            (ExtReal::Finite(a), ExtReal::Finite(b)) => {
                if b > a {
                    Err(undefined())
                } else {
                    Ok(ExtReal::Finite(a - b))
                }
            }
        }
    }

    pub fn leq(&self, other: &ExtReal) -> bool {
        self <= other
    }

    pub fn min_of<'a, I>(items: I) -> Result<ExtReal, ExtRealError>
    where
        I: IntoIterator<Item = &'a ExtReal>,
    {
        items.into_iter().min().cloned().ok_or(ExtRealError::EmptyList)
    }

    pub fn max_of<'a, I>(items: I) -> Result<ExtReal, ExtRealError>
    where
        I: IntoIterator<Item = &'a ExtReal>,
    {
        items.into_iter().max().cloned().ok_or(ExtRealError::EmptyList)
    }

    /// Supremum of a nonempty finite list; equal to the maximum in a total order.
    pub fn sup_of<'a, I>(items: I) -> Result<ExtReal, ExtRealError>
    where
        I: IntoIterator<Item = &'a ExtReal>,
    {
        Self::max_of(items)
    }
}

impl Default for ExtReal {
    fn default() -> Self {
        ExtReal::zero()
    }
}

impl Ord for ExtReal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a.cmp(b),
            (ExtReal::Finite(_), ExtReal::Infinity) => Ordering::Less,
            (ExtReal::Infinity, ExtReal::Finite(_)) => Ordering::Greater,
            (ExtReal::Infinity, ExtReal::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for ExtReal {
    type Output = ExtReal;
    fn add(self, rhs: ExtReal) -> ExtReal {
        ExtReal::add(&self, &rhs)
    }
}

impl<'a> Add<&'a ExtReal> for &'a ExtReal {
    type Output = ExtReal;
    fn add(self, rhs: &'a ExtReal) -> ExtReal {
        ExtReal::add(self, rhs)
    }
}

impl Mul for ExtReal {
    type Output = ExtReal;
    fn mul(self, rhs: ExtReal) -> ExtReal {
        ExtReal::mul(&self, &rhs)
    }
}

impl<'a> Mul<&'a ExtReal> for &'a ExtReal {
    type Output = ExtReal;
    fn mul(self, rhs: &'a ExtReal) -> ExtReal {
        ExtReal::mul(self, rhs)
    }
}

impl Sum for ExtReal {
    fn sum<I: Iterator<Item = ExtReal>>(iter: I) -> Self {
        iter.fold(ExtReal::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a ExtReal> for ExtReal {
    fn sum<I: Iterator<Item = &'a ExtReal>>(iter: I) -> Self {
        iter.fold(ExtReal::zero(), |acc, x| &acc + x)
    }
}

impl From<u64> for ExtReal {
    fn from(n: u64) -> Self {
        ExtReal::from_integer(n)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Infinity => f.write_str("inf"),
            ExtReal::Finite(q) if q.is_integer() => write!(f, "{}", q.numer()),
            ExtReal::Finite(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

impl FromStr for ExtReal {
    type Err = ExtRealError;

    /// Accepts `"p/q"`, `"p"` and `"inf"`; rejects negatives and zero denominators.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ExtRealError::Parse(s.to_string());
        if s == "inf" {
            return Ok(ExtReal::Infinity);
        }
        let parse_digits = |t: &str| -> Result<BigInt, ExtRealError> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            t.parse::<BigInt>().map_err(|_| bad())
        };
        if s.starts_with('-') {
            return Err(ExtRealError::Negative(s.to_string()));
        }
        match s.split_once('/') {
            Some((p, q)) => {
                let p = parse_digits(p)?;
                let q = parse_digits(q)?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(ExtReal::Finite(BigRational::new(p, q)))
            }
            None => Ok(ExtReal::Finite(BigRational::from_integer(parse_digits(s)?))),
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serialize a finite nonnegative rational in the same text form as [`ExtReal`].
pub fn rational_to_string(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: u64, d: u64) -> ExtReal {
        ExtReal::ratio(n, d)
    }

    #[test]
    fn add_examples() {
        assert_eq!(ExtReal::from(2) + ExtReal::Infinity, ExtReal::Infinity);
        assert_eq!(ExtReal::zero() + ExtReal::zero(), ExtReal::zero());
        assert_eq!(r(1, 3) + r(1, 6), r(1, 2));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(ExtReal::zero() * ExtReal::Infinity, ExtReal::zero());
        assert_eq!(ExtReal::Infinity * ExtReal::zero(), ExtReal::zero());
        assert_eq!(ExtReal::from(3) * ExtReal::Infinity, ExtReal::Infinity);
        assert_eq!(r(2, 3) * r(3, 2), ExtReal::one());
    }

    #[test]
    fn sub_partial_examples() {
        assert_eq!(ExtReal::from(5).sub_partial(&ExtReal::from(2)), Ok(ExtReal::from(3)));
        assert_eq!(
            ExtReal::Infinity.sub_partial(&ExtReal::from(2)),
            Ok(ExtReal::Infinity)
        );
        assert!(matches!(
            ExtReal::Infinity.sub_partial(&ExtReal::Infinity),
            Err(ExtRealError::UndefinedDifference { .. })
        ));
        assert!(matches!(
            ExtReal::from(1).sub_partial(&ExtReal::from(2)),
            Err(ExtRealError::UndefinedDifference { .. })
        ));
    }

    #[test]
    fn lattice_examples() {
        let xs = [ExtReal::from(2), ExtReal::Infinity, r(1, 2)];
        assert_eq!(ExtReal::min_of(&xs), Ok(r(1, 2)));
        assert_eq!(ExtReal::max_of(&xs[..2]), Ok(ExtReal::Infinity));
        assert!(r(3, 7).leq(&r(1, 2)));
        assert!(!r(1, 2).leq(&r(3, 7)));
        assert_eq!(ExtReal::min_of(&[]), Err(ExtRealError::EmptyList));
        assert_eq!(ExtReal::sup_of(&[]), Err(ExtRealError::EmptyList));
    }

    #[test]
    fn text_encoding() {
        assert_eq!("inf".parse::<ExtReal>(), Ok(ExtReal::Infinity));
        assert_eq!("4/6".parse::<ExtReal>(), Ok(r(2, 3)));
        assert_eq!("7".parse::<ExtReal>(), Ok(ExtReal::from(7)));
        assert!("-1".parse::<ExtReal>().is_err());
        assert!("-1/2".parse::<ExtReal>().is_err());
        assert!("1/0".parse::<ExtReal>().is_err());
        assert!("1/-2".parse::<ExtReal>().is_err());
        assert!("abc".parse::<ExtReal>().is_err());
        assert!("".parse::<ExtReal>().is_err());
        assert_eq!(r(4, 6).to_string(), "2/3");
        assert_eq!(ExtReal::from(3).to_string(), "3");
        assert_eq!(ExtReal::Infinity.to_string(), "inf");
    }

    #[test]
    fn reduced_form_is_structural() {
        let a = r(2, 4);
        let b = r(1, 2);
        assert_eq!(a, b);
        assert_eq!(a.numer().unwrap(), &BigInt::from(1));
        assert_eq!(a.denom().unwrap(), &BigInt::from(2));
    }

    #[test]
    fn serde_round_trip() {
        let v = vec![r(1, 3), ExtReal::Infinity, ExtReal::zero()];
        let json = serde_json::to_string(&v).unwrap();
        assert_eq!(json, r#"["1/3","inf","0"]"#);
        let back: Vec<ExtReal> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, v);
    }
}
