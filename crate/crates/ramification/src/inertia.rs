//! Inertia functions and their admissibility axioms.

use serde::{Deserialize, Serialize};
use valuation_core::logvalue::{fmt_v, vec_v_string};
use valuation_core::LogValue;

use crate::{FiniteGroup, RamificationError, Subgroup};

/// Per-element values, indexed like the group's elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InertiaFunction {
    #[serde(with = "vec_v_string")]
    values: Vec<LogValue>,
}

impl InertiaFunction {
    pub fn new(values: Vec<LogValue>) -> Self {
        InertiaFunction { values }
    }

    pub fn values(&self) -> &[LogValue] {
        &self.values
    }

    pub fn at(&self, a: usize) -> &LogValue {
        &self.values[a]
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InertiaReport {
    pub violations: Vec<String>,
}

impl InertiaReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `i(e) = 0`, positivity, range `[0,1]`, symmetry under inversion,
/// the ultrametric inequality and conjugation invariance, exhaustively.
pub fn validate_inertia(g: &FiniteGroup, i: &InertiaFunction) -> InertiaReport {
    let mut v = Vec::new();
    if i.values.len() != g.order() {
        v.push(format!("{} values for a group of order {}", i.values.len(), g.order()));
        return InertiaReport { violations: v };
    }
    let one = LogValue::one();
    for a in 0..g.order() {
        let x = i.at(a);
        if a == g.identity() {
            if !x.is_zero() {
                v.push(format!("i(e) = {} is not 0", fmt_v(x)));
            }
            continue;
        }
        if x.is_zero() {
            v.push(format!("i({a}) = 0 for a non-identity element"));
        }
        if *x > one {
            v.push(format!("i({a}) = {} exceeds 1", fmt_v(x)));
        }
        if i.at(g.inv(a)) != x {
            v.push(format!("i({a}) differs from the value at its inverse"));
        }
    }
    for a in 0..g.order() {
        for b in 0..g.order() {
            if *i.at(g.mul(a, b)) > *i.at(a).max(i.at(b)) {
                v.push(format!("i({a}·{b}) exceeds max(i({a}), i({b}))"));
            }
            if i.at(g.conj(b, a)) != i.at(a) {
                v.push(format!("i is not invariant under conjugating {a} by {b}"));
            }
        }
    }
    InertiaReport { violations: v }
}

/// `i(σ) = values[j]` for `σ ∈ chain[j+1] \ chain[j]`, where `chain` runs
/// from `{e}` to `G` through normal subgroups.
pub fn make_filtration_inertia(
    g: &FiniteGroup,
    chain: &[Subgroup],
    values: &[LogValue],
) -> Result<InertiaFunction, RamificationError> {
    let ok_ends = chain.first() == Some(&Subgroup::trivial(g))
        && chain.last() == Some(&Subgroup::whole(g))
        && chain.len() == values.len() + 1
        && chain.iter().all(|s| s.parent_order() == g.order())
        && chain.windows(2).all(|w| w[0].is_subset(&w[1]) && w[0] != w[1]);
    if !ok_ends {
        return Err(RamificationError::InvalidChain);
    }
    if chain.iter().any(|s| !s.is_normal(g)) {
        return Err(RamificationError::NonNormalSubgroup);
    }
    let in_range = values.iter().all(|x| !x.is_zero() && *x <= LogValue::one());
    if !in_range || values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(RamificationError::NonMonotoneValues);
    }
    let out = (0..g.order())
        .map(|a| match (1..chain.len()).find(|&j| chain[j].contains(a) && !chain[j - 1].contains(a)) {
            Some(j) => values[j - 1].clone(),
            None => LogValue::zero(),
        })
        .collect();
    let inertia = InertiaFunction::new(out);
    let report = validate_inertia(g, &inertia);
    if !report.is_valid() {
        return Err(RamificationError::InvalidInertia(report.violations.join("; ")));
    }
    Ok(inertia)
}
