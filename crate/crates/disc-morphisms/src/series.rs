//! Finitely supported series `Σ_{i≥1} f_i T^i` on a closed disc of radius `R`.
//!
//! Exact series carry rational coefficients, valued by the p-adic norm.
//! Skeleton series carry only the valuations `v(f_i)`, which may be any
//! rational.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use valuation_core::logvalue::{fmt_v, parse_v};
use valuation_core::{fmt_rational, log_norm, padic_valuation, parse_rational, LogValue, Prime, Rational};

use crate::{DiscError, QPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Exact(QPoly),
    /// `index ↦ v(f_index)`.
    Skeleton(BTreeMap<u32, Rational>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuedSeries {
    p: Prime,
    radius: LogValue,
    coeffs: Coefficients,
}

impl ValuedSeries {
    pub fn exact(p: Prime, radius: LogValue, poly: QPoly) -> Result<Self, DiscError> {
        if !poly.coeff(0).is_zero() {
            return Err(DiscError::ConstantTerm);
        }
        Self::checked(p, radius, Coefficients::Exact(poly))
    }

    pub fn skeleton(p: Prime, radius: LogValue, vals: BTreeMap<u32, Rational>) -> Result<Self, DiscError> {
        if vals.contains_key(&0) {
            return Err(DiscError::ConstantTerm);
        }
        Self::checked(p, radius, Coefficients::Skeleton(vals))
    }

    fn checked(p: Prime, radius: LogValue, coeffs: Coefficients) -> Result<Self, DiscError> {
        if radius.is_zero() {
            return Err(DiscError::ZeroRadius);
        }
        let empty = match &coeffs {
            Coefficients::Exact(q) => q.is_zero(),
            Coefficients::Skeleton(m) => m.is_empty(),
        };
        if empty {
            return Err(DiscError::EmptySupport);
        }
        Ok(ValuedSeries { p, radius, coeffs })
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn radius(&self) -> &LogValue {
        &self.radius
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coeffs
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.coeffs, Coefficients::Exact(_))
    }

    pub fn exact_poly(&self) -> Result<&QPoly, DiscError> {
        match &self.coeffs {
            Coefficients::Exact(q) => Ok(q),
            Coefficients::Skeleton(_) => Err(DiscError::SkeletonModeUnsupported),
        }
    }

    pub fn with_radius(&self, radius: LogValue) -> Result<Self, DiscError> {
        Self::checked(self.p, radius, self.coeffs.clone())
    }

    /// `index ↦ v(f_index)` over the support.
    pub fn valuations(&self) -> BTreeMap<u32, Rational> {
        match &self.coeffs {
            Coefficients::Exact(q) => q
                .coeffs()
                .iter()
                .map(|(k, c)| (*k, Rational::from_integer(padic_valuation(c, self.p).expect("nonzero").into())))
                .collect(),
            Coefficients::Skeleton(m) => m.clone(),
        }
    }

    pub fn norm(&self, i: u32) -> LogValue {
        match &self.coeffs {
            Coefficients::Exact(q) => log_norm(&q.coeff(i), self.p),
            Coefficients::Skeleton(m) => m.get(&i).map_or_else(LogValue::zero, |v| LogValue::from_v(v.clone())),
        }
    }

    pub fn degree(&self) -> u32 {
        match &self.coeffs {
            Coefficients::Exact(q) => q.degree().expect("nonempty"),
            Coefficients::Skeleton(m) => *m.keys().next_back().expect("nonempty"),
        }
    }

    /// `self ∘ inner` for exact series; the domain is that of `inner`.
    pub fn compose(&self, inner: &ValuedSeries) -> Result<Self, DiscError> {
        if self.p != inner.p {
            return Err(DiscError::PrimeMismatch);
        }
        let q = self.exact_poly()?.compose(inner.exact_poly()?);
        Self::exact(self.p, inner.radius.clone(), q)
    }
}

/// Coefficients `f_[i](a) = Σ_j C(i+j, j)·a^j·f_{i+j}` of `f(a + U) − f(a)`.
pub fn taylor_recenter(f: &ValuedSeries, a: &Rational) -> Result<ValuedSeries, DiscError> {
    let q = f.exact_poly()?;
    if log_norm(a, f.p) > f.radius {
        return Err(DiscError::CenterOutsideDisc(fmt_rational(a)));
    }
    let shifted = q.shift(a).sub(&QPoly::constant(q.eval(a)));
    ValuedSeries::exact(f.p, f.radius.clone(), shifted)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeriesRepr {
    p: Prime,
    #[serde(default)]
    mode: Option<String>,
    #[serde(default)]
    radius_v: Option<String>,
    #[serde(default)]
    coeffs: Option<BTreeMap<String, String>>,
    #[serde(default)]
    coeffs_v: Option<BTreeMap<String, String>>,
}

fn parse_index(k: &str) -> Result<u32, DiscError> {
    match k.parse::<u32>() {
        Ok(i) if k == i.to_string() => Ok(i),
        _ => Err(DiscError::Schema(format!("bad index {k:?}"))),
    }
}

impl TryFrom<SeriesRepr> for ValuedSeries {
    type Error = DiscError;

    fn try_from(r: SeriesRepr) -> Result<Self, DiscError> {
        let schema = |m: &str| DiscError::Schema(m.to_string());
        let radius = match &r.radius_v {
            Some(s) => parse_v(s).map_err(|e| DiscError::Schema(e.to_string()))?,
            None => LogValue::one(),
        };
        let mode = match (r.mode.as_deref(), &r.coeffs, &r.coeffs_v) {
            (Some("exact") | None, Some(_), None) => "exact",
            (Some("skeleton") | None, None, Some(_)) => "skeleton",
            (Some(m), _, _) if m != "exact" && m != "skeleton" => return Err(schema("mode must be exact or skeleton")),
            _ => return Err(schema("give coeffs (exact) or coeffs_v (skeleton), matching the mode")),
        };
        if mode == "exact" {
            let mut terms = Vec::new();
            for (k, c) in r.coeffs.expect("checked") {
                let c = parse_rational(&c).map_err(|e| DiscError::Schema(e.to_string()))?;
                if c.is_zero() {
                    return Err(DiscError::Schema(format!("coefficient at {k} is zero")));
                }
                terms.push((parse_index(&k)?, c));
            }
            ValuedSeries::exact(r.p, radius, QPoly::new(terms))
        } else {
            let mut vals = BTreeMap::new();
            for (k, v) in r.coeffs_v.expect("checked") {
                let x = parse_v(&v).map_err(|e| DiscError::Schema(e.to_string()))?;
                let x = x.v().ok_or_else(|| DiscError::Schema(format!("coefficient at {k} is zero")))?;
                vals.insert(parse_index(&k)?, x.clone());
            }
            ValuedSeries::skeleton(r.p, radius, vals)
        }
    }
}

impl<'de> Deserialize<'de> for ValuedSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        SeriesRepr::deserialize(d)?.try_into().map_err(serde::de::Error::custom)
    }
}

/// Serializes `index ↦ string` in increasing index order.
struct OrderedTerms(Vec<(u32, String)>);

impl Serialize for OrderedTerms {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            m.serialize_entry(&k.to_string(), v)?;
        }
        m.end()
    }
}

impl Serialize for ValuedSeries {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("p", &self.p)?;
        match &self.coeffs {
            Coefficients::Exact(q) => {
                m.serialize_entry("mode", "exact")?;
                m.serialize_entry("radius_v", &fmt_v(&self.radius))?;
                let terms = q.coeffs().iter().map(|(k, c)| (*k, fmt_rational(c))).collect();
                m.serialize_entry("coeffs", &OrderedTerms(terms))?;
            }
            Coefficients::Skeleton(vals) => {
                m.serialize_entry("mode", "skeleton")?;
                m.serialize_entry("radius_v", &fmt_v(&self.radius))?;
                let terms = vals.iter().map(|(k, v)| (*k, fmt_rational(v))).collect();
                m.serialize_entry("coeffs_v", &OrderedTerms(terms))?;
            }
        }
        m.end()
    }
}
