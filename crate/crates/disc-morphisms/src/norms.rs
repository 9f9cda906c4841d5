//! Generic norms of coordinate functions and profiles at type-2 points.

use std::collections::BTreeMap;

use lambda_calc::{LambdaP, PiecewisePower};
use valuation_core::logvalue::fmt_v;
use valuation_core::{binomial_valuation, int, LogValue, Rational};

use crate::polygon::monomial_envelope;
use crate::{DiscError, ValuedSeries};

/// The terms `v(C(k, i)) + v(f_k)` with shift `j = k − i`, for every
/// coordinate index `i ≥ 1`: `v(N_i(ρ)) = min_j (c + j·v(ρ))`.
pub fn norm_terms(vals: &BTreeMap<u32, Rational>, p: valuation_core::Prime) -> BTreeMap<u32, Vec<(Rational, u32)>> {
    let top = vals.keys().next_back().copied().unwrap_or(0);
    (1..=top)
        .map(|i| {
            let terms = vals
                .range(i..)
                .map(|(k, v)| {
                    let c = binomial_valuation(u64::from(*k), u64::from(i), p).expect("k ≥ i");
                    (v + int(i64::from(c)), k - i)
                })
                .collect();
            (i, terms)
        })
        .collect()
}

fn check_radius(f: &ValuedSeries, rho: &LogValue) -> Result<(), DiscError> {
    if rho.is_zero() || rho > f.radius() {
        return Err(DiscError::RadiusOutOfRange(fmt_v(rho)));
    }
    Ok(())
}

/// `v(N_i(ρ))` for every `i` from 1 to the degree, where
/// `N_i(ρ) = max_j |C(i+j, j)|·ρ^j·|f_{i+j}|`.
pub fn generic_norm_valuations(f: &ValuedSeries, rho: &LogValue) -> Result<BTreeMap<u32, Rational>, DiscError> {
    check_radius(f, rho)?;
    let x = rho.v().expect("nonzero");
    Ok(norm_terms(&f.valuations(), f.p())
        .into_iter()
        .map(|(i, terms)| {
            let v = terms
                .iter()
                .map(|(c, j)| c + int(i64::from(*j)) * x)
                .min()
                .expect("the top index contributes to every i");
            (i, v)
        })
        .collect())
}

pub fn generic_norms(f: &ValuedSeries, rho: &LogValue) -> Result<Vec<(u32, LogValue)>, DiscError> {
    Ok(generic_norm_valuations(f, rho)?.into_iter().map(|(i, v)| (i, LogValue::from_v(v))).collect())
}

/// Normalized profile at the maximal point of the closed disc of radius
/// `ρ`: the envelope of `N_i(ρ)·s^i` on `[0, ρ]`, rescaled to the unit square.
pub fn profile_at_point(f: &ValuedSeries, rho: &LogValue) -> Result<LambdaP, DiscError> {
    let norms = generic_norm_valuations(f, rho)?;
    let x = rho.v().expect("checked");
    let shifted: Vec<(u32, Rational)> = norms.iter().map(|(i, v)| (*i, v + int(i64::from(*i)) * x)).collect();
    let top = shifted.iter().map(|(_, v)| v).min().expect("nonempty").clone();
    let terms: Vec<(u32, Rational)> = shifted.into_iter().map(|(i, v)| (i, v - &top)).collect();
    let env = monomial_envelope(&LogValue::one(), &terms)?;
    LambdaP::from_piecewise(f.p(), &env.func).map_err(|e| DiscError::NotInLambdaP(e.to_string()))
}

/// Normalized profile of the restriction to the sub-disc of radius `r`:
/// `t ↦ P(r·t) / P(r)`.
pub fn restrict_profile(pf: &LambdaP, r: &LogValue) -> Result<LambdaP, DiscError> {
    if r.is_zero() || *r >= LogValue::one() {
        return Err(DiscError::RadiusOutOfRange(fmt_v(r)));
    }
    let f = pf.func();
    let top = f.eval(r)?;
    let g = f.restrict(LogValue::zero(), r.clone())?.rescale_domain(r)?.scale(&top.inv()?)?;
    Ok(LambdaP::from_piecewise(pf.p(), &PiecewisePower::new(g)?)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ResidualDegrees {
    pub separable: u64,
    pub inseparable: u64,
}

/// `i` is the degree of the profile at the point; `s` is the largest index
/// attaining `max |f_i|ρ^i`, divided by `i`.
pub fn residual_degrees(f: &ValuedSeries, rho: &LogValue) -> Result<ResidualDegrees, DiscError> {
    let inseparable = profile_at_point(f, rho)?.degree();
    let rv = rho.finite_v()?;
    let weight = |(i, v): (&u32, &Rational)| (v + int(i64::from(*i)) * rv, std::cmp::Reverse(*i));
    let vals = f.valuations();
    let top = vals.iter().map(weight).min().ok_or(DiscError::EmptySupport)?;
    let disc_degree = u64::from(top.1 .0);
    if disc_degree % inseparable != 0 {
        return Err(DiscError::NonIntegralSeparableDegree { disc_degree, inseparable });
    }
    Ok(ResidualDegrees { separable: disc_degree / inseparable, inseparable })
}
