//! Exhaustive enumeration of chains of simple functions recomposing to a
//! given `f ∈ Λ_p`.
//!
//! A factor's break is pulled back to a break of `f` by the factors before
//! it (otherwise the composite would acquire a break `f` does not have), so
//! the candidates are: a number of factors, a degree exponent for each one
//! summing to `α_n`, and for each factor the break of `f` it lands on.

use valuation_core::LogValue;

use crate::{chain_condition_holds, compose_chain, make_lambda, LambdaError, LambdaP};

/// All chains `[f_1, …, f_k]` of simple functions with `f_k ∘ … ∘ f_1 = f`.
/// With `require_chain_condition`, branches violating `f_i(b_{f_i}) <
/// b_{f_{i+1}}` are cut as soon as both factors exist.
pub fn enumerate_simple_chains(f: &LambdaP, require_chain_condition: bool) -> Result<Vec<Vec<LambdaP>>, LambdaError> {
    let total = *f.alphas().last().expect("α_0 exists");
    let mut out = Vec::new();
    let mut chain = Vec::new();
    extend(f, total, require_chain_condition, &mut chain, &LambdaP::identity(f.p()), &mut out)?;
    Ok(out)
}

fn extend(
    f: &LambdaP,
    remaining: u32,
    require_chain: bool,
    chain: &mut Vec<LambdaP>,
    prefix: &LambdaP,
    out: &mut Vec<Vec<LambdaP>>,
) -> Result<(), LambdaError> {
    if remaining == 0 {
        if !chain.is_empty() && compose_chain(f.p(), chain)? == *f {
            out.push(chain.clone());
        }
        return Ok(());
    }
    for b in f.breaks() {
        let c: LogValue = prefix.eval(b)?;
        for d in 1..=remaining {
            let g = make_lambda(f.p(), vec![c.clone()], vec![0, d])?;
            chain.push(g.clone());
            let tail_ok = !require_chain || chain_condition_holds(&chain[chain.len().saturating_sub(2)..]);
            if tail_ok {
                let next = g.compose(prefix)?;
                extend(f, remaining - d, require_chain, chain, &next, out)?;
            }
            chain.pop();
        }
    }
    Ok(())
}
