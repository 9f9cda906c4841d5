//! Ramification filtrations and Herbrand functions `r ↦ ∏_σ max(r, i(σ))`.

use lambda_calc::{LambdaP, Monomial, PiecewisePower};
use valuation_core::logvalue::fmt_v;
use valuation_core::{int, LogValue, Prime, Rational};

use crate::{validate_inertia, FiniteGroup, InertiaFunction, RamificationError, Subgroup};

fn check_inertia(g: &FiniteGroup, i: &InertiaFunction) -> Result<(), RamificationError> {
    let r = validate_inertia(g, i);
    if r.is_valid() {
        Ok(())
    } else {
        Err(RamificationError::InvalidInertia(r.violations.join("; ")))
    }
}

/// Level sets `H_r = {σ ∈ H : i(σ) ≤ r}` at every attained value `r`,
/// starting from `r = 0`, with the p-power check below 1. Assumes `i` has
/// already been validated, so every level set is a subgroup.
fn levels_of(i: &InertiaFunction, h: &Subgroup, p: Prime) -> Result<Vec<(LogValue, Vec<usize>)>, RamificationError> {
    let mut elems = h.elements();
    elems.sort_by(|&a, &b| i.at(a).cmp(i.at(b)));
    let one = LogValue::one();
    let mut out: Vec<(LogValue, Vec<usize>)> = Vec::new();
    for (k, &a) in elems.iter().enumerate() {
        let r = i.at(a);
        if elems.get(k + 1).is_some_and(|&b| i.at(b) == r) {
            continue;
        }
        if *r < one && p.log_exact(k as u64 + 1).is_none() {
            return Err(RamificationError::PGroupViolation { at: fmt_v(r), order: k + 1, p: p.get() });
        }
        out.push((r.clone(), elems[..=k].to_vec()));
    }
    Ok(out)
}

fn filtration_of(
    g: &FiniteGroup,
    i: &InertiaFunction,
    h: &Subgroup,
    p: Prime,
) -> Result<Vec<(LogValue, Subgroup)>, RamificationError> {
    levels_of(i, h, p)?.into_iter().map(|(r, members)| Ok((r, Subgroup::from_elements(g, &members)?))).collect()
}

/// `[(0, {e}), (r_1, G_{r_1}), …]` over the attained inertia values.
pub fn ramification_filtration(
    g: &FiniteGroup,
    i: &InertiaFunction,
    p: Prime,
) -> Result<Vec<(LogValue, Subgroup)>, RamificationError> {
    check_inertia(g, i)?;
    filtration_of(g, i, &Subgroup::whole(g), p)
}

/// Herbrand function of the subgroup `h` with the restricted inertia.
pub fn herbrand_on_subgroup(
    g: &FiniteGroup,
    i: &InertiaFunction,
    h: &Subgroup,
    p: Prime,
) -> Result<LambdaP, RamificationError> {
    check_inertia(g, i)?;
    if h.parent_order() != g.order() {
        return Err(RamificationError::NotASubgroup);
    }
    herbrand_unchecked(i, h, p)
}

/// On `(r_j, r_{j+1})` the exponent is `|H_{r_j}|` and the coefficient is
/// `∏_{i(σ) > r_j} i(σ)`.
fn herbrand_unchecked(i: &InertiaFunction, h: &Subgroup, p: Prime) -> Result<LambdaP, RamificationError> {
    let one = LogValue::one();
    let levels = levels_of(i, h, p)?;
    let weights: Vec<LogValue> = h.elements().into_iter().map(|a| i.at(a).clone()).collect();
    let cuts: Vec<LogValue> = levels.iter().map(|(r, _)| r.clone()).filter(|r| !r.is_zero() && *r < one).collect();
    let mut lower = vec![LogValue::zero()];
    lower.extend(cuts.iter().cloned());
    let pieces = lower
        .iter()
        .map(|r| {
            let exp = weights.iter().filter(|w| *w <= r).count();
            let coef: Rational =
                weights.iter().filter(|w| *w > r).map(|w| w.v().expect("nonzero above r").clone()).sum();
            Monomial::new(coef, int(exp as i64))
        })
        .collect();
    let f = PiecewisePower::from_parts(LogValue::zero(), one, cuts, pieces)?;
    Ok(LambdaP::from_piecewise(p, &f)?)
}

pub fn herbrand_galois(g: &FiniteGroup, i: &InertiaFunction, p: Prime) -> Result<LambdaP, RamificationError> {
    herbrand_on_subgroup(g, i, &Subgroup::whole(g), p)
}

/// `H_G ∘ H_H^{-1}`.
pub fn herbrand_relative(
    g: &FiniteGroup,
    i: &InertiaFunction,
    h: &Subgroup,
    p: Prime,
) -> Result<LambdaP, RamificationError> {
    relative_between(g, i, &Subgroup::whole(g), h, p)
}

/// `H_K ∘ H_H^{-1}` for subgroups `H ≤ K`.
pub fn relative_between(
    g: &FiniteGroup,
    i: &InertiaFunction,
    k: &Subgroup,
    h: &Subgroup,
    p: Prime,
) -> Result<LambdaP, RamificationError> {
    check_inertia(g, i)?;
    if !h.is_subset(k) || k.parent_order() != g.order() {
        return Err(RamificationError::NotASubgroup);
    }
    let top = herbrand_unchecked(i, k, p)?;
    let bottom = herbrand_unchecked(i, h, p)?;
    let f = top.func().compose(&bottom.invert())?;
    Ok(LambdaP::from_piecewise(p, &f)?)
}
