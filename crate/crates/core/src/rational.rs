//! Exact rational numbers and their extension with infinities.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

/// `num / den` as an exact rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"-p/q"` or an integer literal. The unicode minus sign
/// is accepted as well.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let cleaned = text.trim().replace('\u{2212}', "-");
    let err = || Error::InvalidRational(text.to_string());
    if cleaned.is_empty() {
        return Err(err());
    }
    let (num, den) = match cleaned.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (cleaned.as_str(), "1"),
    };
    let num = BigInt::from_str(num.strip_prefix('+').unwrap_or(num)).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"p/q"`, or just `"p"` for integers.
pub fn format_rational(value: &Rational) -> String {
    value.to_string()
}

pub(crate) fn max_of<'a, I: IntoIterator<Item = &'a Rational>>(values: I) -> Option<Rational> {
    values.into_iter().max().cloned()
}

pub(crate) fn min_of<'a, I: IntoIterator<Item = &'a Rational>>(values: I) -> Option<Rational> {
    values.into_iter().min().cloned()
}

/// The midpoint of two rationals.
pub(crate) fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// A rational extended with `-inf` and `+inf`, ordered as on the extended
/// real line.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtendedValue {
    NegInfinity,
    Finite(Rational),
    PosInfinity,
}

impl ExtendedValue {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedValue::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtendedValue::Finite(v) => Some(v),
            _ => None,
        }
    }

    pub fn into_finite(self) -> Option<Rational> {
        match self {
            ExtendedValue::Finite(v) => Some(v),
            _ => None,
        }
    }
}

impl From<Rational> for ExtendedValue {
    fn from(value: Rational) -> Self {
        ExtendedValue::Finite(value)
    }
}

impl PartialOrd for ExtendedValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedValue {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedValue::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (NegInfinity, NegInfinity) | (PosInfinity, PosInfinity) => Ordering::Equal,
            (NegInfinity, _) | (_, PosInfinity) => Ordering::Less,
            (PosInfinity, _) | (_, NegInfinity) => Ordering::Greater,
        }
    }
}

impl fmt::Display for ExtendedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedValue::NegInfinity => f.write_str("-inf"),
            ExtendedValue::PosInfinity => f.write_str("+inf"),
            ExtendedValue::Finite(v) => write!(f, "{v}"),
        }
    }
}

impl FromStr for ExtendedValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().replace('\u{2212}', "-").as_str() {
            "-inf" => Ok(ExtendedValue::NegInfinity),
            "+inf" | "inf" => Ok(ExtendedValue::PosInfinity),
            _ => parse_rational(s).map(ExtendedValue::Finite),
        }
    }
}

pub(crate) fn one() -> Rational {
    Rational::one()
}

pub(crate) fn zero() -> Rational {
    Rational::zero()
}
