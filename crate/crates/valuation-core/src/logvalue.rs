//! Elements of `p^Q ∪ {0}` kept in exponent form.
//!
//! A `LogValue` with exponent `v` denotes `p^{-v}`; the absent exponent
//! denotes zero. Larger values have smaller exponents, so `Ord` compares
//! exponents in reverse and puts zero below everything.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::{fmt_rational, parse_rational, Rational};
use crate::ValuationError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LogValue {
    v: Option<Rational>,
}

impl LogValue {
    pub fn zero() -> Self {
        LogValue { v: None }
    }

    pub fn one() -> Self {
        LogValue { v: Some(Rational::zero()) }
    }

    /// The value `p^{-v}`.
    pub fn from_v(v: Rational) -> Self {
        LogValue { v: Some(v) }
    }

    pub fn from_v_int(v: i64) -> Self {
        Self::from_v(crate::int(v))
    }

    /// The value `p^{e}`.
    pub fn from_value_exp(e: Rational) -> Self {
        Self::from_v(-e)
    }

    pub fn v(&self) -> Option<&Rational> {
        self.v.as_ref()
    }

    /// The finite exponent, or an error for the zero value.
    pub fn finite_v(&self) -> Result<&Rational, ValuationError> {
        self.v.as_ref().ok_or(ValuationError::InfiniteExponent)
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_none()
    }

    pub fn is_one(&self) -> bool {
        self.v.as_ref().is_some_and(|v| v.is_zero())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (&self.v, &other.v) {
            (Some(a), Some(b)) => Self::from_v(a + b),
            _ => Self::zero(),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self, ValuationError> {
        let b = other.v.as_ref().ok_or(ValuationError::DivisionByZero)?;
        Ok(match &self.v {
            Some(a) => Self::from_v(a - b),
            None => Self::zero(),
        })
    }

    pub fn inv(&self) -> Result<Self, ValuationError> {
        Self::one().div(self)
    }

    pub fn pow(&self, q: &Rational) -> Result<Self, ValuationError> {
        match &self.v {
            Some(a) => Ok(Self::from_v(a * q)),
            None if q.is_positive() => Ok(Self::zero()),
            None => Err(ValuationError::ZeroToNonpositivePower),
        }
    }

    pub fn pow_int(&self, k: i64) -> Result<Self, ValuationError> {
        self.pow(&crate::int(k))
    }
}

impl Ord for LogValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.v, &other.v) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => b.cmp(a),
        }
    }
}

impl PartialOrd for LogValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.v {
            Some(v) => write!(f, "p^-({})", fmt_rational(v)),
            None => write!(f, "0"),
        }
    }
}

impl fmt::Display for LogValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// String form of the exponent: `"3/2"` or `"inf"`.
pub fn fmt_v(x: &LogValue) -> String {
    match &x.v {
        Some(v) => fmt_rational(v),
        None => "inf".to_string(),
    }
}

pub fn parse_v(s: &str) -> Result<LogValue, ValuationError> {
    if s.trim() == "inf" {
        Ok(LogValue::zero())
    } else {
        parse_rational(s).map(LogValue::from_v)
    }
}

impl Serialize for LogValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(1))?;
        m.serialize_entry("v", &fmt_v(self))?;
        m.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LogValueRepr {
    v: Option<String>,
    value_exp: Option<String>,
}

impl<'de> Deserialize<'de> for LogValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let r = LogValueRepr::deserialize(d)?;
        match (r.v, r.value_exp) {
            (Some(v), None) => parse_v(&v).map_err(D::Error::custom),
            (None, Some(e)) if e.trim() == "-inf" => Ok(LogValue::zero()),
            (None, Some(e)) => parse_rational(&e).map(LogValue::from_value_exp).map_err(D::Error::custom),
            _ => Err(D::Error::custom("expected exactly one of \"v\" or \"value_exp\"")),
        }
    }
}

/// Serde adapter for a bare exponent string (`"3/2"`, `"inf"`).
pub mod v_string {
    use super::*;

    pub fn serialize<S: Serializer>(x: &LogValue, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_v(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<LogValue, D::Error> {
        let s = String::deserialize(d)?;
        parse_v(&s).map_err(serde::de::Error::custom)
    }
}

/// Same as [`v_string`] for vectors.
pub mod vec_v_string {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(xs: &[LogValue], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&fmt_v(x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<LogValue>, D::Error> {
        Vec::<String>::deserialize(d)?.iter().map(|s| parse_v(s).map_err(serde::de::Error::custom)).collect()
    }
}
