//! Suite-level checks over many `Λ_p` elements.

use valuation_core::Exec;

use crate::{chain_condition_holds, compose_chain, LambdaP};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationOutcome {
    pub n_breaks: usize,
    pub recomposes: bool,
    pub factors_simple: bool,
    pub chain_condition: bool,
}

impl FactorizationOutcome {
    pub fn passed(&self) -> bool {
        self.recomposes && self.factors_simple && self.chain_condition
    }
}

pub fn factorization_outcome(f: &LambdaP) -> FactorizationOutcome {
    let factors = f.canonical_factorization();
    FactorizationOutcome {
        n_breaks: f.n_breaks(),
        recomposes: compose_chain(f.p(), &factors).is_ok_and(|g| g == *f),
        factors_simple: factors.iter().all(LambdaP::is_simple),
        chain_condition: chain_condition_holds(&factors),
    }
}

/// Factorizes and recomposes every case.
pub fn factorization_sweep(cases: &[LambdaP], exec: Exec) -> Vec<FactorizationOutcome> {
    exec.map(cases, factorization_outcome)
}

/// `f ∘ g` for each pair, validated back into `Λ_p`.
pub fn closure_sweep(pairs: &[(LambdaP, LambdaP)], exec: Exec) -> Vec<bool> {
    exec.map(pairs, |(f, g)| f.compose(g).is_ok())
}
