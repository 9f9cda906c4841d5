//! Batch checks over many (group, inertia) cases.

use lambda_calc::LambdaP;
use serde::Serialize;
use valuation_core::{Exec, LogValue, Prime};

use crate::{
    canonical_tower, herbrand_galois, herbrand_relative, ramification_filtration, verify_tower, FiniteGroup,
    InertiaFunction, RamificationError, Subgroup, TowerReport,
};

#[derive(Clone, Debug)]
pub struct HerbrandCase<'a> {
    pub group: &'a FiniteGroup,
    pub inertia: InertiaFunction,
    pub p: Prime,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum HerbrandOutcome {
    /// The Herbrand function is in `Λ_p`; `degrees_match` compares each
    /// piece's local degree with the order of the group at its lower end.
    Lambda {
        n_breaks: usize,
        degrees_match: bool,
    },
    PGroupViolation,
    Error {
        message: String,
    },
}

pub fn herbrand_outcome(case: &HerbrandCase<'_>) -> HerbrandOutcome {
    let run = || -> Result<HerbrandOutcome, RamificationError> {
        let f: LambdaP = herbrand_galois(case.group, &case.inertia, case.p)?;
        let one = LogValue::one();
        let orders: Vec<u64> = ramification_filtration(case.group, &case.inertia, case.p)?
            .into_iter()
            .filter(|(r, _)| *r < one)
            .map(|(_, s)| s.len() as u64)
            .collect();
        Ok(HerbrandOutcome::Lambda { n_breaks: f.n_breaks(), degrees_match: f.local_degrees() == orders })
    };
    match run() {
        Ok(o) => o,
        Err(RamificationError::PGroupViolation { .. }) => HerbrandOutcome::PGroupViolation,
        Err(e) => HerbrandOutcome::Error { message: e.to_string() },
    }
}

pub fn herbrand_sweep(cases: &[HerbrandCase<'_>], exec: Exec) -> Vec<HerbrandOutcome> {
    exec.map(cases, herbrand_outcome)
}

#[derive(Clone, Debug)]
pub struct TowerCase<'a> {
    pub group: &'a FiniteGroup,
    pub inertia: InertiaFunction,
    pub subgroup: Subgroup,
    pub p: Prime,
}

pub fn tower_outcome(case: &TowerCase<'_>) -> Result<TowerReport, RamificationError> {
    let t = canonical_tower(case.group, &case.inertia, &case.subgroup, case.p)?;
    let total = herbrand_relative(case.group, &case.inertia, &case.subgroup, case.p)?;
    Ok(verify_tower(&t, &total))
}

pub fn tower_sweep(cases: &[TowerCase<'_>], exec: Exec) -> Vec<Result<TowerReport, RamificationError>> {
    exec.map(cases, tower_outcome)
}
