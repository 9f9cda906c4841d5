//! Newton polygons and the profile `ρ ↦ max_i |f_i|·ρ^i`.

use lambda_calc::{Monomial, PiecewiseMonomial, PiecewisePower};
use num_traits::Zero;
use serde::Serialize;
use valuation_core::{int, rational, LogValue, Rational};

use crate::{DiscError, ValuedSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: u32,
    pub to: u32,
    #[serde(with = "rational::as_string")]
    pub slope: Rational,
}

impl Edge {
    pub fn length(&self) -> u32 {
        self.to - self.from
    }
}

/// Lower convex hull of the points `(i, v(f_i))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    #[serde(serialize_with = "vertices_ser")]
    pub vertices: Vec<(u32, Rational)>,
    pub edges: Vec<Edge>,
}

fn vertices_ser<S: serde::Serializer>(vs: &[(u32, Rational)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(vs.len()))?;
    for (i, v) in vs {
        seq.serialize_element(&(i, valuation_core::fmt_rational(v)))?;
    }
    seq.end()
}

fn slope(a: &(u32, Rational), b: &(u32, Rational)) -> Rational {
    (&b.1 - &a.1) / int(i64::from(b.0) - i64::from(a.0))
}

pub fn newton_polygon(f: &ValuedSeries) -> NewtonPolygon {
    let mut hull: Vec<(u32, Rational)> = Vec::new();
    for pt in f.valuations() {
        while hull.len() >= 2
            && slope(&hull[hull.len() - 2], &hull[hull.len() - 1]) >= slope(&hull[hull.len() - 1], &pt)
        {
            hull.pop();
        }
        hull.push(pt);
    }
    let edges = hull.windows(2).map(|w| Edge { from: w[0].0, to: w[1].0, slope: slope(&w[0], &w[1]) }).collect();
    NewtonPolygon { vertices: hull, edges }
}

/// Upper envelope of `|f_i|·ρ^i` on `[0, R]` with its dominating indices,
/// one per piece in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Profile {
    pub func: PiecewisePower,
    pub dominating: Vec<u32>,
}

impl Profile {
    pub fn radius(&self) -> &LogValue {
        self.func.hi()
    }

    pub fn breaks(&self) -> &[LogValue] {
        self.func.breaks()
    }

    /// Top dominating index, the degree of `f` on the closed disc.
    pub fn degree(&self) -> u32 {
        *self.dominating.last().expect("at least one piece")
    }

    /// `t ↦ P(R·t) / P(R)` on `[0, 1]`.
    pub fn normalized(&self) -> Result<PiecewisePower, DiscError> {
        let r = self.radius();
        let top = self.func.eval(r)?;
        let g = self.func.rescale_domain(&r.inv()?)?.scale(&top.inv()?)?;
        Ok(PiecewisePower::new(g)?)
    }
}

/// Envelope of `(v, i) ↦ v + i·x` over `[0, hi]`, with integer exponents.
pub(crate) fn monomial_envelope(hi: &LogValue, terms: &[(u32, Rational)]) -> Result<Profile, DiscError> {
    let monos: Vec<Monomial> = terms.iter().map(|(i, v)| Monomial::new(v.clone(), int(i64::from(*i)))).collect();
    let env = PiecewiseMonomial::envelope(LogValue::zero(), hi.clone(), &monos)?;
    let dominating = env.pieces().iter().map(|m| u32::try_from(m.exp.to_integer()).expect("positive index")).collect();
    Ok(Profile { func: PiecewisePower::new(env)?, dominating })
}

pub fn profile(f: &ValuedSeries) -> Result<Profile, DiscError> {
    let terms: Vec<(u32, Rational)> = f.valuations().into_iter().collect();
    debug_assert!(terms.iter().all(|(i, _)| !i.is_zero()));
    monomial_envelope(f.radius(), &terms)
}
