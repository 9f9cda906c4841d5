//! Break flows: the normalized breaks of the profile at `η_ρ` as exact
//! piecewise-monomial functions of `ρ` next to the outer boundary.
//!
//! The parameter is `x = v(ρ)`, so `x → 0⁺` is `ρ → 1⁻`. The generic norms
//! at `η_ρ` are `N_i(ρ) = max_k |C(k, i)|·|a_k|·ρ^{k−i}`, with generalized
//! binomials for negative `k`. Labels `i` above the largest positive index
//! never dominate the normalized profile, so they are left out.

use std::collections::BTreeMap;

use disc_morphisms::sheet::{Affine, Sheet};
use lambda_calc::{Monomial, PiecewiseMonomial};
use num_traits::Zero;
use serde::Serialize;
use valuation_core::logvalue::{fmt_v, v_string};
use valuation_core::rational::as_string;
use valuation_core::{generalized_binomial_valuation, int, LogValue, Prime, Rational};

use crate::annulus::{crossings, Term};
use crate::{annulus_degree, sigma_epsilon, AnnulusError, AnnulusMorphism};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flows {
    /// The window is `(window_lo, 1)`.
    #[serde(with = "v_string")]
    pub window_lo: LogValue,
    /// `b_1 < … < b_n`.
    pub flows: Vec<PiecewiseMonomial>,
    /// `1 = p^{α_0} < … < p^{α_n}`.
    pub local_degrees: Vec<u64>,
}

impl Flows {
    pub fn slopes(&self) -> Vec<Rational> {
        self.flows.iter().map(boundary_slope).collect()
    }

    /// `lim_{ρ→1} b_j(ρ)`.
    pub fn limits(&self) -> Vec<LogValue> {
        self.flows.iter().map(|b| b.eval(&LogValue::one()).expect("1 is in the window")).collect()
    }

    /// `p^{α_j} − p^{α_{j−1}}` for `j = 1..n`.
    pub fn jumps(&self) -> Vec<u64> {
        self.local_degrees.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// `∂h`: the exponent of the piece ending at 1.
pub fn boundary_slope(h: &PiecewiseMonomial) -> Rational {
    h.last_exponent().clone()
}

pub(crate) fn laurent_sheet(vals: &[Term], p: Prime, sign: i64) -> Sheet {
    let top = vals.iter().map(|(k, _)| *k).max().unwrap_or(0).max(0) as u64;
    let mut labels: BTreeMap<u32, Vec<Affine>> = BTreeMap::new();
    for i in 1..=top {
        let terms: Vec<Affine> = vals
            .iter()
            .filter_map(|(k, v)| {
                let b = generalized_binomial_valuation(*k, i, p)?;
                Some(Affine::new(v + int(i64::from(b)), int(sign * (k - i as i64))))
            })
            .collect();
        if !terms.is_empty() {
            labels.insert(i as u32, terms);
        }
    }
    Sheet::new(labels, Affine::new(Rational::zero(), int(sign)))
}

/// Walks the cells of `sheet` from `x = 0` while the dominating labels stay
/// those of the first cell, stopping at `cap` if given.
pub(crate) fn flows_on(sheet: &Sheet, cap: Option<&Rational>) -> Result<Flows, AnnulusError> {
    if cap.is_some_and(|c| *c <= Rational::zero()) {
        return Err(AnnulusError::NoStableWindow);
    }
    let mut lo = Rational::zero();
    let first = sheet.first_cell(&lo, cap, &[])?;
    let labels = first.structure.labels.clone();
    let mut cells = vec![first];
    let window_x = loop {
        let last = cells.last().expect("nonempty");
        let Some(hi) = last.hi.clone() else { break None };
        if cap == Some(&hi) {
            break Some(hi);
        }
        lo = hi;
        let next = sheet.first_cell(&lo, cap, &[])?;
        if next.structure.labels != labels {
            break Some(lo);
        }
        cells.push(next);
    };
    let window_lo = window_x.clone().map_or_else(LogValue::zero, LogValue::from_v);
    // cells run from ρ = 1 inwards; pieces run outwards
    let breaks: Vec<LogValue> = cells[1..].iter().rev().map(|c| LogValue::from_v(c.lo.clone())).collect();
    let flows = (0..labels.len().saturating_sub(1))
        .map(|j| {
            let pieces = cells
                .iter()
                .rev()
                .map(|c| {
                    let a = &c.normalized_breaks[j];
                    Monomial::new(a.coef_v.clone(), a.exp.clone())
                })
                .collect();
            PiecewiseMonomial::new(window_lo.clone(), LogValue::one(), breaks.clone(), pieces)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Flows { window_lo, flows, local_degrees: labels.iter().map(|l| u64::from(*l)).collect() })
}

/// Flows of the profile at `η_ρ` for `ρ` in a window `(ρ₀, 1)` inside the
/// annulus on which the degree and `σ` are constant.
pub fn break_flows(f: &AnnulusMorphism) -> Result<Flows, AnnulusError> {
    annulus_degree(f)?;
    let vals = f.valuations()?;
    let mut caps = crossings(&f.derivative_valuations()?, 1);
    caps.extend(f.inner().v().cloned());
    let cap = caps.into_iter().min();
    flows_on(&laurent_sheet(&vals, f.p(), 1), cap.as_ref())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferentReport {
    pub degree: u64,
    pub sigma: i64,
    #[serde(with = "v_string")]
    pub eps_norm: LogValue,
    #[serde(with = "v_string")]
    pub window_lo: LogValue,
    /// `|ε|·ρ^{σ−d+1}` as `(v(|ε|), σ − d + 1)`.
    #[serde(with = "as_string")]
    pub lhs_coef_v: Rational,
    #[serde(with = "as_string")]
    pub lhs_exp: Rational,
    /// `∏ b_j^{p^{α_j} − p^{α_{j−1}}}`.
    pub rhs: PiecewiseMonomial,
    pub multiplicative_holds: bool,
    /// `Σ (p^{α_j} − p^{α_{j−1}})·∂b_j`.
    #[serde(with = "as_string")]
    pub rhs_log_slope: Rational,
    pub differentiated_holds: bool,
    pub violation: Option<String>,
}

impl DifferentReport {
    pub fn passed(&self) -> bool {
        self.multiplicative_holds && self.differentiated_holds
    }
}

pub(crate) fn different_identity(
    degree: u64,
    sigma: i64,
    eps_norm: &LogValue,
    flows: &Flows,
) -> Result<DifferentReport, AnnulusError> {
    let lhs = Monomial::new(eps_norm.finite_v()?.clone(), int(sigma - degree as i64 + 1));
    let mut rhs = PiecewiseMonomial::monomial(
        flows.window_lo.clone(),
        LogValue::one(),
        Monomial::new(Rational::zero(), Rational::zero()),
    )?;
    let mut rhs_log_slope = Rational::zero();
    for (b, jump) in flows.flows.iter().zip(flows.jumps()) {
        let e = int(jump as i64);
        rhs = rhs.mul(&b.pow(&e)?)?;
        rhs_log_slope += boundary_slope(b) * e;
    }
    let bad = rhs.pieces().iter().zip(rhs.intervals()).find(|(m, _)| **m != lhs);
    let violation = bad.map(|(m, (a, b))| {
        format!(
            "on ({}, {}) the product is p^-({})·ρ^({}) but |ε|·ρ^(σ−d+1) is p^-({})·ρ^({})",
            fmt_v(&a),
            fmt_v(&b),
            m.coef_v,
            m.exp,
            lhs.coef_v,
            lhs.exp
        )
    });
    let differentiated_holds = rhs_log_slope == lhs.exp;
    Ok(DifferentReport {
        degree,
        sigma,
        eps_norm: eps_norm.clone(),
        window_lo: flows.window_lo.clone(),
        lhs_coef_v: lhs.coef_v,
        lhs_exp: lhs.exp,
        rhs,
        multiplicative_holds: violation.is_none(),
        rhs_log_slope,
        differentiated_holds,
        violation,
    })
}

/// `|ε|·ρ^{σ−d+1} = ∏ b_j(ρ)^{p^{α_j} − p^{α_{j−1}}}` on the flow window, as
/// an identity of piecewise monomials, together with its log-slope form.
pub fn different_identity_check(f: &AnnulusMorphism) -> Result<DifferentReport, AnnulusError> {
    let degree = annulus_degree(f)?;
    let flows = break_flows(f)?;
    let narrowed = AnnulusMorphism::skeleton(f.p(), flows.window_lo.clone(), f.valuations()?.into_iter().collect())?;
    let (sigma, eps) = sigma_epsilon(&narrowed)?;
    different_identity(degree, sigma, &eps, &flows)
}
