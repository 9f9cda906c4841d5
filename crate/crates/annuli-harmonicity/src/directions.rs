//! Directions at the Gauss point `η_{0,1}` of the line.
//!
//! A residue direction is the open unit disc around a center `a` with
//! `|a| ≤ 1`, entered along `η_{a,ρ}` as `ρ → 1⁻`; its data come from
//! `f(a + U) − f(a)`. The direction `∞` is entered along `η_{0,1/ρ}`. There
//! the degree, `σ` and `|ε|` of `V = 1/f(1/U)` are read from the terms of `f`
//! dominating as `|T| → 1⁺`: if `f ~ a_D·T^D` and `f' ~ m·a_m·T^{m−1}`, then
//! `dV/dU ~ (m·a_m / a_D²)·U^{2D−1−m}`. The flows come from the generic
//! norms of `f` at radius `1/ρ`.

use std::collections::BTreeMap;

use disc_morphisms::{taylor_recenter, QPoly, ValuedSeries};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;
use valuation_core::logvalue::{v_string, vec_v_string};
use valuation_core::rational::{as_string, vec_as_string};
use valuation_core::{
    fmt_rational, generalized_binomial_valuation, int, log_norm, padic_valuation, LogValue, Prime, Rational,
};

use crate::annulus::{crossings, dominant, Term};
use crate::flows::{different_identity, flows_on, laurent_sheet, DifferentReport, Flows};
use crate::{annulus_degree, sigma_epsilon, AnnulusError, AnnulusMorphism};

/// Residue enumeration scans every class of `F_p`.
pub const MAX_ENUMERATED_PRIME: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Direction {
    Residue {
        #[serde(with = "as_string")]
        center: Rational,
    },
    Infinity,
    /// Stand-in for every direction not enumerated, built from the flows
    /// `b_j/ρ` of the profile at the Gauss point.
    Generic,
}

impl Direction {
    pub fn residue(center: Rational) -> Self {
        Direction::Residue { center }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DirectionData {
    pub direction: Direction,
    pub degree: u64,
    pub sigma: i64,
    #[serde(with = "v_string")]
    pub eps_norm: LogValue,
    pub flows: Flows,
    #[serde(with = "vec_as_string")]
    pub slopes: Vec<Rational>,
    #[serde(with = "vec_v_string")]
    pub limits: Vec<LogValue>,
}

impl DirectionData {
    fn assemble(direction: Direction, degree: u64, sigma: i64, eps_norm: LogValue, flows: Flows) -> Self {
        let slopes = flows.slopes();
        let limits = flows.limits();
        DirectionData { direction, degree, sigma, eps_norm, flows, slopes, limits }
    }

    pub fn different_identity(&self) -> Result<DifferentReport, AnnulusError> {
        different_identity(self.degree, self.sigma, &self.eps_norm, &self.flows)
    }
}

fn exact_terms(q: &QPoly, p: Prime) -> Vec<Term> {
    q.coeffs().iter().map(|(k, c)| (i64::from(*k), int(padic_valuation(c, p).expect("nonzero coefficient")))).collect()
}

fn derivative_terms(vals: &[Term], p: Prime) -> Vec<Term> {
    vals.iter()
        .filter(|(k, _)| *k != 0)
        .map(|(k, v)| (k - 1, v + int(padic_valuation(&int(*k), p).expect("nonzero index"))))
        .collect()
}

/// `f` at radius 1, provided `max |f_i| = 1`.
pub(crate) fn unit_gauss_series(f: &ValuedSeries) -> Result<ValuedSeries, AnnulusError> {
    let top = f.valuations().into_values().min().ok_or(AnnulusError::EmptySeries)?;
    if !top.is_zero() {
        return Err(AnnulusError::NonFiniteAtGaussPoint(format!(
            "max |f_i| is p^-({}), so η_(0,1) is not sent to itself",
            fmt_rational(&top)
        )));
    }
    Ok(f.with_radius(LogValue::one())?)
}

/// Valuations of the coordinate polynomial `f_[i](a)`, indexed by the power of `a`.
fn coordinate_valuations(vals: &BTreeMap<u32, Rational>, i: u32, p: Prime) -> Vec<(u32, Rational)> {
    vals.iter()
        .filter(|(k, _)| **k >= i)
        .filter_map(|(k, v)| {
            let b = generalized_binomial_valuation(i64::from(*k), u64::from(i), p)?;
            Some((k - i, v + int(i64::from(b))))
        })
        .collect()
}

/// Valuations of `f(a + U) − f(a)`. Skeleton coefficients are generic, so
/// each recentered norm is its unique dominant term; a tie is an error.
fn recentered_terms(f: &ValuedSeries, center: &Rational) -> Result<Vec<Term>, AnnulusError> {
    let p = f.p();
    if f.is_exact() {
        return Ok(exact_terms(taylor_recenter(f, center)?.exact_poly()?, p));
    }
    let vals = f.valuations();
    if center.is_zero() {
        return Ok(vals.into_iter().filter(|(k, _)| *k > 0).map(|(k, v)| (i64::from(k), v)).collect());
    }
    let va = int(padic_valuation(center, p)?);
    let top = vals.keys().max().copied().unwrap_or(0);
    let mut out = Vec::new();
    for i in 1..=top {
        let mut weights: Vec<Rational> =
            coordinate_valuations(&vals, i, p).into_iter().map(|(m, w)| w + int(i64::from(m)) * &va).collect();
        weights.sort();
        match weights.as_slice() {
            [] => {}
            [w] => out.push((i64::from(i), w.clone())),
            [w, x, ..] if w < x => out.push((i64::from(i), w.clone())),
            _ => return Err(AnnulusError::SkeletonTie { index: i, center: fmt_rational(center) }),
        }
    }
    Ok(out)
}

fn series_terms(f: &ValuedSeries) -> Vec<Term> {
    f.valuations().into_iter().map(|(k, v)| (i64::from(k), v)).collect()
}

/// Degree, `σ`, `|ε|` and break flows of `f` along `direction`.
/// `f` must satisfy `max |f_i| = 1`.
pub fn direction_data(f: &ValuedSeries, direction: &Direction) -> Result<DirectionData, AnnulusError> {
    let p = f.p();
    let unit = unit_gauss_series(f)?;
    match direction {
        Direction::Residue { center } => {
            if log_norm(center, p) > LogValue::one() {
                return Err(AnnulusError::NotOnUnitCircle(fmt_rational(center)));
            }
            let vals = recentered_terms(&unit, center)?;
            let mut caps = crossings(&vals, 1);
            caps.extend(crossings(&derivative_terms(&vals, p), 1));
            let flows = flows_on(&laurent_sheet(&vals, p, 1), caps.iter().min())?;
            let annulus = AnnulusMorphism::skeleton(p, flows.window_lo.clone(), vals.into_iter().collect())?;
            let degree = annulus_degree(&annulus)?;
            let (sigma, eps) = sigma_epsilon(&annulus)?;
            Ok(DirectionData::assemble(direction.clone(), degree, sigma, eps, flows))
        }
        Direction::Infinity => {
            let vals = series_terms(&unit);
            let dv = derivative_terms(&vals, p);
            let (big_d, _) = dominant(&vals, false).expect("nonempty");
            let (e, w) = dominant(&dv, false).ok_or(AnnulusError::EmptySeries)?;
            let mut caps = crossings(&vals, -1);
            caps.extend(crossings(&dv, -1));
            let flows = flows_on(&laurent_sheet(&vals, p, -1), caps.iter().min())?;
            let sigma = 2 * big_d - 2 - e;
            Ok(DirectionData::assemble(Direction::Infinity, big_d as u64, sigma, LogValue::from_v(w), flows))
        }
        Direction::Generic => generic_closed_form(f),
    }
}

/// Every other direction is unramified for the separable part of the
/// residue map, so it has degree `p^{α_n}`, `σ = 0` and flows `b_j/ρ` on
/// `(b_n, 1)`.
pub(crate) fn generic_closed_form(f: &ValuedSeries) -> Result<DirectionData, AnnulusError> {
    let unit = unit_gauss_series(f)?;
    let gauss = disc_morphisms::profile_at_point(&unit, &LogValue::one())?;
    let local_degrees = gauss.local_degrees();
    let window_lo = gauss.breaks().last().cloned().unwrap_or_else(LogValue::zero);
    let flows: Vec<lambda_calc::PiecewiseMonomial> = gauss
        .breaks()
        .iter()
        .map(|b| {
            let m = lambda_calc::Monomial::new(b.finite_v().expect("interior break").clone(), -Rational::one());
            lambda_calc::PiecewiseMonomial::monomial(window_lo.clone(), LogValue::one(), m)
        })
        .collect::<Result<_, _>>()?;
    let eps = gauss
        .breaks()
        .iter()
        .zip(local_degrees.windows(2))
        .map(|(b, w)| b.pow_int((w[1] - w[0]) as i64).expect("finite"))
        .fold(LogValue::one(), |acc, x| acc.mul(&x));
    let degree = *local_degrees.last().expect("nonempty");
    let flows = Flows { window_lo, flows, local_degrees };
    Ok(DirectionData::assemble(Direction::Generic, degree, 0, eps, flows))
}

fn residue_mod(x: &Rational, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let num = x.numer().mod_floor(&pb).to_u64().expect("below p");
    let den = x.denom().mod_floor(&pb).to_u64().expect("below p");
    mul_mod(num, pow_mod(den, p - 2, p), p)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    (u128::from(a) * u128::from(b) % u128::from(p)) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Roots in `F_p` of a polynomial (coefficients low to high, nonzero
/// leading term) with multiplicity, by repeated synthetic division.
fn fp_roots(mut c: Vec<u64>, p: u64) -> (Vec<(u64, usize)>, usize) {
    let mut roots = Vec::new();
    for r in 0..p {
        let mut mult = 0;
        while c.len() > 1 {
            // divide by (a − r): Horner from the top
            let mut q = vec![0; c.len() - 1];
            let mut carry = 0;
            for k in (1..c.len()).rev() {
                carry = (c[k] + mul_mod(carry, r, p)) % p;
                q[k - 1] = carry;
            }
            if !(c[0] + mul_mod(carry, r, p)).is_multiple_of(p) {
                break;
            }
            c = q;
            mult += 1;
        }
        if mult > 0 {
            roots.push((r, mult));
        }
    }
    (roots, c.len() - 1)
}

/// `f_[i](a) = Σ_k C(k, i)·f_k·a^{k−i}` as a polynomial in `a`.
fn coordinate_poly(q: &QPoly, i: u32) -> QPoly {
    QPoly::new(q.coeffs().iter().filter(|(k, _)| **k >= i).map(|(k, c)| {
        let b = num_integer::binomial(BigInt::from(*k), BigInt::from(i));
        (k - i, c * Rational::from(b))
    }))
}

/// Residues `r ∈ F_p` whose class holds a zero of some reduced coordinate
/// function `f_[i]`, `0 ≤ i ≤ deg f`, together with `0`. In skeleton mode
/// each normalized `f_[i]` must reduce to a monomial, so only `0` is critical.
pub fn critical_residues(f: &ValuedSeries) -> Result<Vec<u64>, AnnulusError> {
    let p = f.p().get();
    if p > MAX_ENUMERATED_PRIME {
        return Err(AnnulusError::PrimeTooLarge(p));
    }
    if !f.is_exact() {
        let vals = f.valuations();
        for i in 0..=f.degree() {
            let mut w: Vec<Rational> = coordinate_valuations(&vals, i, f.p()).into_iter().map(|(_, w)| w).collect();
            w.sort();
            if w.len() > 1 && w[0] == w[1] {
                return Err(AnnulusError::SkeletonTie { index: i, center: "a generic unit".into() });
            }
        }
        return Ok(vec![0]);
    }
    let q = f.exact_poly()?;
    let mut out = vec![0];
    for i in 0..=q.degree().unwrap_or(0) {
        let h = coordinate_poly(q, i);
        if h.is_zero() {
            continue;
        }
        let w = h.coeffs().values().map(|c| padic_valuation(c, f.p()).expect("nonzero")).min().expect("nonzero");
        let scale = num_traits::pow(int(p as i64), w.unsigned_abs() as usize);
        let scale = if w.is_negative() { scale } else { Rational::one() / scale };
        let mut red = vec![0u64; h.degree().unwrap_or(0) as usize + 1];
        for (k, c) in h.coeffs() {
            let u = c * &scale;
            if padic_valuation(&u, f.p())? == 0 {
                red[*k as usize] = residue_mod(&u, p);
            }
        }
        while red.last() == Some(&0) {
            red.pop();
        }
        let (roots, rest) = fp_roots(red, p);
        if rest > 0 {
            return Err(AnnulusError::ResidueRootsOutsideFp { index: i });
        }
        out.extend(roots.into_iter().map(|(r, _)| r));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}
