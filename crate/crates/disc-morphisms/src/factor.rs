//! Checking a proposed factorization `f = h_k ∘ … ∘ h_1` of exact series.

use lambda_calc::LambdaP;
use serde::Serialize;
use valuation_core::{fmt_rational, LogValue};

use crate::{profile, profile_at_point, DiscError, ValuedSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorCheck {
    /// Radius of the disc the factor is evaluated on.
    #[serde(with = "valuation_core::logvalue::v_string")]
    pub radius: LogValue,
    pub profile: LambdaP,
    /// The canonical factor this one is matched with, when its profile is
    /// not the identity.
    pub expected: Option<LambdaP>,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationReport {
    pub profile: LambdaP,
    pub canonical: Vec<LambdaP>,
    pub factors: Vec<FactorCheck>,
    /// Every canonical factor is matched by exactly one factor.
    pub all_matched: bool,
}

impl FactorizationReport {
    pub fn passed(&self) -> bool {
        self.all_matched && self.factors.iter().all(|f| f.matches)
    }
}

/// `factors` are listed in the order they are applied. Each factor's profile
/// at the image of the previous disc is compared with the next canonical
/// factor of the profile of `f` at the boundary of its disc; factors with
/// identity profile are residually separable and match nothing.
pub fn verify_disc_factorization(f: &ValuedSeries, factors: &[ValuedSeries]) -> Result<FactorizationReport, DiscError> {
    let target = f.exact_poly()?;
    let mut composed: Option<ValuedSeries> = None;
    for h in factors {
        composed = Some(match composed {
            None => h.with_radius(f.radius().clone())?,
            Some(g) => h.compose(&g)?,
        });
    }
    let composed = composed.ok_or(DiscError::EmptySupport)?;
    let got = composed.exact_poly()?;
    if got != target {
        let keys = target.coeffs().keys().chain(got.coeffs().keys());
        let index = keys.copied().filter(|k| target.coeff(*k) != got.coeff(*k)).min().expect("polynomials differ");
        return Err(DiscError::CompositionMismatch {
            index: i64::from(index),
            expected: fmt_rational(&target.coeff(index)),
            found: fmt_rational(&got.coeff(index)),
        });
    }
    let whole = profile_at_point(f, f.radius())?;
    let canonical = whole.canonical_factorization();
    let mut next = canonical.iter();
    let mut radius = f.radius().clone();
    let mut checks = Vec::new();
    let mut all_matched = true;
    for h in factors {
        let h = h.with_radius(radius.clone())?;
        let ph = profile_at_point(&h, &radius)?;
        let (expected, matches) = if ph.is_identity() {
            (None, true)
        } else {
            match next.next() {
                Some(c) => (Some(c.clone()), *c == ph),
                None => {
                    all_matched = false;
                    (None, false)
                }
            }
        };
        checks.push(FactorCheck { radius: radius.clone(), profile: ph, expected, matches });
        radius = profile(&h)?.func.eval(&radius)?;
    }
    all_matched &= next.next().is_none();
    Ok(FactorizationReport { profile: whole, canonical, factors: checks, all_matched })
}
