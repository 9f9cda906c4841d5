//! Laurent polynomials on open annuli `r₁ < |T| < 1`.

use std::collections::BTreeMap;

use disc_morphisms::QPoly;
use num_traits::{Signed, Zero};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use valuation_core::logvalue::{fmt_v, parse_v};
use valuation_core::{fmt_rational, int, padic_valuation, parse_rational, LogValue, Prime, Rational};

use crate::AnnulusError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Skeleton,
}

/// `S = Σ a_k T^k` over integer `k`. In skeleton mode the stored values are
/// the valuations `v(a_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnulusMorphism {
    p: Prime,
    inner: LogValue,
    mode: Mode,
    terms: BTreeMap<i64, Rational>,
}

/// Valuation-weighted term `(exponent, v(coefficient))`.
pub(crate) type Term = (i64, Rational);

/// The index dominating `max |a_k|ρ^k` as `ρ → 1⁻` (ties go to the smaller
/// index) or `ρ → 1⁺` (ties go to the larger one).
pub(crate) fn dominant(terms: &[Term], from_inside: bool) -> Option<Term> {
    terms
        .iter()
        .min_by(|a, b| {
            let ord = a.1.cmp(&b.1);
            if from_inside {
                ord.then(a.0.cmp(&b.0))
            } else {
                ord.then(b.0.cmp(&a.0))
            }
        })
        .cloned()
}

/// Positive `x` where two of the lines `x ↦ v + k·sign·x` meet.
pub(crate) fn crossings(terms: &[Term], sign: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    for (a, (i, vi)) in terms.iter().enumerate() {
        for (j, vj) in &terms[a + 1..] {
            let x = (vj - vi) / int(sign * (i - j));
            if x.is_positive() {
                out.push(x);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Checks that `d` dominates every other term for all `x = v(ρ)` in
/// `(0, x_max)`.
fn single_slope(terms: &[Term], d: &Term, x_max: Option<&Rational>) -> Result<(), AnnulusError> {
    for (j, vj) in terms {
        if j == &d.0 {
            continue;
        }
        let gap0 = vj - &d.1;
        let slope = int(j - d.0);
        let near_one = gap0.is_positive() || (gap0.is_zero() && slope.is_positive());
        let far_ok = match x_max {
            Some(x) => !(&gap0 + &slope * x).is_negative(),
            None => slope.is_positive(),
        };
        if !near_one || !far_ok {
            let at = if slope.is_zero() { "1".into() } else { fmt_rational(&(-gap0 / slope)) };
            return Err(AnnulusError::MultipleSlopesOnAnnulus { at: format!("v = {at}") });
        }
    }
    Ok(())
}

impl AnnulusMorphism {
    pub fn exact(p: Prime, inner: LogValue, terms: BTreeMap<i64, Rational>) -> Result<Self, AnnulusError> {
        let terms: BTreeMap<i64, Rational> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self::checked(p, inner, Mode::Exact, terms)
    }

    pub fn skeleton(p: Prime, inner: LogValue, vals: BTreeMap<i64, Rational>) -> Result<Self, AnnulusError> {
        Self::checked(p, inner, Mode::Skeleton, vals)
    }

    pub fn from_poly(p: Prime, inner: LogValue, q: &QPoly) -> Result<Self, AnnulusError> {
        Self::exact(p, inner, q.coeffs().iter().map(|(k, c)| (i64::from(*k), c.clone())).collect())
    }

    fn checked(p: Prime, inner: LogValue, mode: Mode, terms: BTreeMap<i64, Rational>) -> Result<Self, AnnulusError> {
        if terms.is_empty() {
            return Err(AnnulusError::EmptySeries);
        }
        if inner >= LogValue::one() {
            return Err(AnnulusError::InnerRadiusOutOfRange(fmt_v(&inner)));
        }
        Ok(AnnulusMorphism { p, inner, mode, terms })
    }

    /// The same series on `(r, 1)`, where `r` is the outermost radius at
    /// which two terms of the series or of its derivative cross.
    pub fn germ(&self) -> Result<Self, AnnulusError> {
        let vals = self.valuations()?;
        let mut xs = crossings(&vals, 1);
        xs.extend(crossings(&self.derivative_valuations()?, 1));
        let inner = xs.into_iter().min().map_or_else(LogValue::zero, LogValue::from_v);
        Self::checked(self.p, inner, self.mode, self.terms.clone())
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn inner(&self) -> &LogValue {
        &self.inner
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn terms(&self) -> &BTreeMap<i64, Rational> {
        &self.terms
    }

    pub fn valuations(&self) -> Result<Vec<Term>, AnnulusError> {
        self.terms
            .iter()
            .map(|(k, c)| match self.mode {
                Mode::Exact => Ok((*k, int(padic_valuation(c, self.p)?))),
                Mode::Skeleton => Ok((*k, c.clone())),
            })
            .collect()
    }

    /// Terms of `dS/dT`: `(k − 1, v(k) + v(a_k))` for `k ≠ 0`.
    pub fn derivative_valuations(&self) -> Result<Vec<Term>, AnnulusError> {
        Ok(self
            .valuations()?
            .into_iter()
            .filter(|(k, _)| *k != 0)
            .map(|(k, v)| {
                let vk = padic_valuation(&int(k), self.p).expect("nonzero index");
                (k - 1, v + int(vk))
            })
            .collect())
    }

    pub fn has_negative_indices(&self) -> bool {
        self.terms.keys().next().is_some_and(|k| *k < 0)
    }

    pub fn poly(&self) -> Result<QPoly, AnnulusError> {
        if self.mode == Mode::Skeleton {
            return Err(AnnulusError::SkeletonModeUnsupported);
        }
        if self.has_negative_indices() {
            return Err(AnnulusError::LaurentComposition);
        }
        Ok(QPoly::new(self.terms.iter().map(|(k, c)| (*k as u32, c.clone()))))
    }

    fn x_max(&self) -> Option<&Rational> {
        self.inner.v()
    }
}

/// The unique dominating index on the annulus, which must be positive and
/// carry a unit coefficient so that the image radius tends to 1.
pub fn annulus_degree(f: &AnnulusMorphism) -> Result<u64, AnnulusError> {
    let vals = f.valuations()?;
    let d = dominant(&vals, true).expect("nonempty");
    single_slope(&vals, &d, f.x_max())?;
    if d.0 <= 0 {
        return Err(AnnulusError::NotAligned(format!("dominating index {} is not positive", d.0)));
    }
    if !d.1.is_zero() {
        return Err(AnnulusError::NotAligned(format!("|a_{}| = p^-({}) is not 1", d.0, fmt_rational(&d.1))));
    }
    Ok(d.0 as u64)
}

/// `(σ, |ε|)` with `dS/dT = ε·T^σ·(1 + h)` and `|h| < 1` on the annulus.
pub fn sigma_epsilon(f: &AnnulusMorphism) -> Result<(i64, LogValue), AnnulusError> {
    let dv = f.derivative_valuations()?;
    let top = dominant(&dv, true).ok_or(AnnulusError::EmptySeries)?;
    single_slope(&dv, &top, f.x_max())?;
    Ok((top.0, LogValue::from_v(top.1)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaCompositionReport {
    pub degree_f: u64,
    pub sigma_f: i64,
    pub sigma_g: i64,
    pub sigma_composite: i64,
    pub rhs: i64,
    pub holds: bool,
}

/// `σ(g∘f) = deg(f)·σ(g) + σ(f)`, with each side computed on the germ at
/// the outer boundary and `g∘f` formed exactly.
pub fn sigma_composition_check(
    f: &AnnulusMorphism,
    g: &AnnulusMorphism,
) -> Result<SigmaCompositionReport, AnnulusError> {
    if f.p != g.p {
        return Err(AnnulusError::PrimeMismatch);
    }
    let composite = g.poly()?.compose(&f.poly()?);
    let h = AnnulusMorphism::from_poly(f.p, LogValue::zero(), &composite)?.germ()?;
    let (f, g) = (f.germ()?, g.germ()?);
    let degree_f = annulus_degree(&f)?;
    annulus_degree(&g)?;
    let (sigma_f, _) = sigma_epsilon(&f)?;
    let (sigma_g, _) = sigma_epsilon(&g)?;
    let (sigma_composite, _) = sigma_epsilon(&h)?;
    let rhs = degree_f as i64 * sigma_g + sigma_f;
    Ok(SigmaCompositionReport { degree_f, sigma_f, sigma_g, sigma_composite, rhs, holds: rhs == sigma_composite })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AnnulusRepr {
    p: Prime,
    #[serde(default)]
    mode: Option<String>,
    #[serde(default)]
    inner_v: Option<String>,
    #[serde(default)]
    coeffs: Option<BTreeMap<String, String>>,
    #[serde(default)]
    coeffs_v: Option<BTreeMap<String, String>>,
}

fn parse_index(k: &str) -> Result<i64, AnnulusError> {
    match k.parse::<i64>() {
        Ok(i) if k == i.to_string() => Ok(i),
        _ => Err(AnnulusError::Schema(format!("bad index {k:?}"))),
    }
}

impl TryFrom<AnnulusRepr> for AnnulusMorphism {
    type Error = AnnulusError;

    fn try_from(r: AnnulusRepr) -> Result<Self, AnnulusError> {
        let schema = |m: String| AnnulusError::Schema(m);
        let inner = match &r.inner_v {
            Some(s) => parse_v(s).map_err(|e| schema(e.to_string()))?,
            None => LogValue::zero(),
        };
        match (r.mode.as_deref(), r.coeffs, r.coeffs_v) {
            (Some("exact") | None, Some(cs), None) => {
                let mut terms = BTreeMap::new();
                for (k, c) in cs {
                    let c = parse_rational(&c).map_err(|e| schema(e.to_string()))?;
                    if c.is_zero() {
                        return Err(schema(format!("coefficient at {k} is zero")));
                    }
                    terms.insert(parse_index(&k)?, c);
                }
                AnnulusMorphism::exact(r.p, inner, terms)
            }
            (Some("skeleton") | None, None, Some(vs)) => {
                let mut vals = BTreeMap::new();
                for (k, v) in vs {
                    let x = parse_v(&v).map_err(|e| schema(e.to_string()))?;
                    let x = x.v().ok_or_else(|| schema(format!("coefficient at {k} is zero")))?.clone();
                    vals.insert(parse_index(&k)?, x);
                }
                AnnulusMorphism::skeleton(r.p, inner, vals)
            }
            _ => Err(schema("give coeffs (exact) or coeffs_v (skeleton), matching the mode".into())),
        }
    }
}

impl<'de> Deserialize<'de> for AnnulusMorphism {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        AnnulusRepr::deserialize(d)?.try_into().map_err(serde::de::Error::custom)
    }
}

struct OrderedTerms<'a>(&'a BTreeMap<i64, Rational>);

impl Serialize for OrderedTerms<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            m.serialize_entry(&k.to_string(), &fmt_rational(v))?;
        }
        m.end()
    }
}

impl Serialize for AnnulusMorphism {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(4))?;
        m.serialize_entry("p", &self.p)?;
        m.serialize_entry("mode", &self.mode)?;
        m.serialize_entry("inner_v", &fmt_v(&self.inner))?;
        let key = if self.mode == Mode::Exact { "coeffs" } else { "coeffs_v" };
        m.serialize_entry(key, &OrderedTerms(&self.terms))?;
        m.end()
    }
}
