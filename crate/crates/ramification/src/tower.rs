//! Canonical towers `H = H_1 < … < H_{n+1} ≤ G` with simply ramified steps.

use std::collections::HashMap;

use lambda_calc::{compose_chain, LambdaP};
use serde::Serialize;
use valuation_core::{LogValue, Prime};

use crate::herbrand::relative_between;
use crate::subgroup::all_subgroups;
use crate::{herbrand_relative, ramification_filtration, FiniteGroup, InertiaFunction, RamificationError, Subgroup};

impl Serialize for Subgroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.elements().serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tower {
    /// `H_1 < … < H_{n+1}`.
    pub chain: Vec<Subgroup>,
    /// `s(i)`: the first filtration index `j` with `H_i = H·G_{r_j}`.
    pub s_indices: Vec<usize>,
    /// Herbrand function of each step `H_i < H_{i+1}`.
    pub steps: Vec<LambdaP>,
    /// Herbrand function of `H_{n+1} < G` when the chain stops below `G`.
    pub final_step: Option<LambdaP>,
}

pub fn canonical_tower(
    g: &FiniteGroup,
    i: &InertiaFunction,
    h: &Subgroup,
    p: Prime,
) -> Result<Tower, RamificationError> {
    if h.parent_order() != g.order() || Subgroup::from_elements(g, &h.elements()).is_err() {
        return Err(RamificationError::NotASubgroup);
    }
    let one = LogValue::one();
    let filtration = ramification_filtration(g, i, p)?;
    let mut chain: Vec<Subgroup> = Vec::new();
    let mut s_indices = Vec::new();
    for (j, (_, gr)) in filtration.iter().enumerate().filter(|(_, (r, _))| *r < one) {
        let k = h.join(gr, g);
        if chain.last() != Some(&k) {
            chain.push(k);
            s_indices.push(j);
        }
    }
    let steps = chain.windows(2).map(|w| relative_between(g, i, &w[1], &w[0], p)).collect::<Result<Vec<_>, _>>()?;
    let top = chain.last().expect("chain starts at H");
    let final_step =
        if top.len() < g.order() { Some(relative_between(g, i, &Subgroup::whole(g), top, p)?) } else { None };
    Ok(Tower { chain, s_indices, steps, final_step })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepCheck {
    pub index: u64,
    pub herbrand_degree: u64,
    pub simple: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub steps: Vec<StepCheck>,
    /// Every step is simple of degree equal to its subgroup index.
    pub simply_ramified: bool,
    /// The step above the chain, if any, has identity Herbrand function.
    pub final_step_trivial: bool,
    /// The steps are the canonical factors of the total Herbrand function.
    pub matches_canonical_factorization: bool,
    /// All steps composed give the total Herbrand function.
    pub recomposes: bool,
}

impl TowerReport {
    pub fn passed(&self) -> bool {
        self.simply_ramified && self.final_step_trivial && self.matches_canonical_factorization && self.recomposes
    }
}

pub fn verify_tower(t: &Tower, f_total: &LambdaP) -> TowerReport {
    let steps: Vec<StepCheck> = t
        .chain
        .windows(2)
        .zip(&t.steps)
        .map(|(w, f)| StepCheck {
            index: (w[1].len() / w[0].len().max(1)) as u64,
            herbrand_degree: f.degree(),
            simple: f.is_simple(),
        })
        .collect();
    let simply_ramified =
        steps.len() == t.steps.len() && steps.iter().all(|s| s.simple && s.index == s.herbrand_degree);
    let final_step_trivial = t.final_step.as_ref().is_none_or(LambdaP::is_identity);
    let matches_canonical_factorization = t.steps == f_total.canonical_factorization();
    let mut all = t.steps.clone();
    all.extend(t.final_step.iter().cloned());
    let recomposes = compose_chain(f_total.p(), &all).is_ok_and(|f| f == *f_total);
    TowerReport { steps, simply_ramified, final_step_trivial, matches_canonical_factorization, recomposes }
}

/// Result of the exhaustive chain search.
#[derive(Clone, Debug)]
pub struct ChainSearch {
    pub chains_examined: usize,
    pub admissible: Vec<Vec<Subgroup>>,
}

/// Every strictly increasing chain of subgroups starting at `h`, kept when
/// its steps are simply ramified of index degree, the step up to `G` is
/// trivial, and the steps are the canonical factors of `H_G ∘ H_H^{-1}`.
pub fn enumerate_admissible_chains(
    g: &FiniteGroup,
    i: &InertiaFunction,
    h: &Subgroup,
    p: Prime,
) -> Result<ChainSearch, RamificationError> {
    let target = herbrand_relative(g, i, h, p)?.canonical_factorization();
    let above: Vec<Subgroup> = all_subgroups(g).into_iter().filter(|k| h.is_subset(k)).collect();
    let whole = Subgroup::whole(g);
    let mut cache: HashMap<(usize, usize), LambdaP> = HashMap::new();
    let mut rel = |a: usize, b: &Subgroup, above: &[Subgroup]| -> Result<LambdaP, RamificationError> {
        let key = (a, above.iter().position(|k| k == b).unwrap_or(usize::MAX));
        if let Some(f) = cache.get(&key) {
            return Ok(f.clone());
        }
        let f = relative_between(g, i, b, &above[a], p)?;
        cache.insert(key, f.clone());
        Ok(f)
    };
    let start = above.iter().position(|k| k == h).ok_or(RamificationError::NotASubgroup)?;
    let mut search = ChainSearch { chains_examined: 0, admissible: Vec::new() };
    let mut stack: Vec<Vec<usize>> = vec![vec![start]];
    while let Some(chain) = stack.pop() {
        search.chains_examined += 1;
        let top = *chain.last().expect("nonempty");
        let mut steps = Vec::new();
        let mut simple = true;
        for w in chain.windows(2) {
            let f = rel(w[0], &above[w[1]], &above)?;
            let index = (above[w[1]].len() / above[w[0]].len()) as u64;
            simple &= f.is_simple() && f.degree() == index;
            steps.push(f);
        }
        let final_ok = above[top] == whole || rel(top, &whole, &above)?.is_identity();
        if simple && final_ok && steps == target {
            search.admissible.push(chain.iter().map(|&k| above[k].clone()).collect());
        }
        for (k, sub) in above.iter().enumerate() {
            if above[top].is_subset(sub) && *sub != above[top] {
                let mut next = chain.clone();
                next.push(k);
                stack.push(next);
            }
        }
    }
    search.admissible.sort();
    Ok(search)
}
