//! Subgroups as membership bitsets, plus lattice enumeration for small groups.

use std::collections::BTreeSet;

use crate::{FiniteGroup, RamificationError};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    bits: Vec<u64>,
    n: usize,
}

impl Subgroup {
    fn empty(n: usize) -> Self {
        Subgroup { bits: vec![0; n.div_ceil(64)], n }
    }

    fn insert(&mut self, a: usize) {
        self.bits[a / 64] |= 1 << (a % 64);
    }

    pub fn contains(&self, a: usize) -> bool {
        a < self.n && self.bits[a / 64] >> (a % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&a| self.contains(a)).collect()
    }

    pub fn parent_order(&self) -> usize {
        self.n
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        let mut s = Self::empty(g.order());
        s.insert(g.identity());
        s
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        let mut s = Self::empty(g.order());
        (0..g.order()).for_each(|a| s.insert(a));
        s
    }

    /// The set `elems`, checked to be a subgroup of `g`.
    pub fn from_elements(g: &FiniteGroup, elems: &[usize]) -> Result<Self, RamificationError> {
        let mut s = Self::empty(g.order());
        for &a in elems {
            if a >= g.order() {
                return Err(RamificationError::NotASubgroup);
            }
            s.insert(a);
        }
        let ok = s.contains(g.identity())
            && s.elements()
                .iter()
                .all(|&a| s.contains(g.inv(a)) && s.elements().iter().all(|&b| s.contains(g.mul(a, b))));
        if ok {
            Ok(s)
        } else {
            Err(RamificationError::NotASubgroup)
        }
    }

    /// Interprets bit `k` of `mask` as membership of element `k`.
    pub fn from_mask(g: &FiniteGroup, mask: u64) -> Result<Self, RamificationError> {
        if g.order() < 64 && mask >> g.order() != 0 {
            return Err(RamificationError::NotASubgroup);
        }
        let elems: Vec<usize> = (0..64.min(g.order())).filter(|&k| mask >> k & 1 == 1).collect();
        Self::from_elements(g, &elems)
    }

    /// The subgroup generated by `gens`.
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Self {
        let mut s = Self::trivial(g);
        let mut frontier = vec![g.identity()];
        while let Some(a) = frontier.pop() {
            for &h in gens {
                let b = g.mul(a, h);
                if !s.contains(b) {
                    s.insert(b);
                    frontier.push(b);
                }
            }
        }
        s
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        let elems = self.elements();
        (0..g.order()).all(|x| elems.iter().all(|&a| self.contains(g.conj(x, a))))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Subgroup { bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect(), n: self.n }
    }

    /// The subgroup generated by both.
    pub fn join(&self, other: &Self, g: &FiniteGroup) -> Self {
        let mut gens = self.elements();
        gens.extend(other.elements());
        Self::generated(g, &gens)
    }

    /// `x H x^{-1}`.
    pub fn conjugate(&self, g: &FiniteGroup, x: usize) -> Self {
        let mut s = Self::empty(self.n);
        for a in self.elements() {
            s.insert(g.conj(x, a));
        }
        s
    }
}

/// Every subgroup of `g`, found as joins of cyclic subgroups.
pub fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let cyclic: BTreeSet<Subgroup> = (0..g.order()).map(|a| Subgroup::generated(g, &[a])).collect();
    let mut found = cyclic.clone();
    let mut frontier: Vec<Subgroup> = cyclic.iter().cloned().collect();
    while let Some(h) = frontier.pop() {
        for c in &cyclic {
            if c.is_subset(&h) {
                continue;
            }
            let j = h.join(c, g);
            if found.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    let mut out: Vec<Subgroup> = found.into_iter().collect();
    out.sort_by_key(|s| (s.len(), s.clone()));
    out
}

pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    all_subgroups(g).into_iter().filter(|s| s.is_normal(g)).collect()
}

/// Every chief series `{e} = N_0 < … < N_k = G`: maximal chains of normal
/// subgroups of `G`.
pub fn chief_series(g: &FiniteGroup) -> Vec<Vec<Subgroup>> {
    let normals = normal_subgroups(g);
    let covers = |a: &Subgroup| -> Vec<Subgroup> {
        let above: Vec<&Subgroup> = normals.iter().filter(|m| a.is_subset(m) && *m != a).collect();
        above.iter().filter(|m| !above.iter().any(|l| *l != **m && l.is_subset(m))).map(|m| (*m).clone()).collect()
    };
    let mut out = Vec::new();
    let mut stack = vec![vec![Subgroup::trivial(g)]];
    while let Some(chain) = stack.pop() {
        let top = chain.last().expect("nonempty");
        if top.len() == g.order() {
            out.push(chain);
            continue;
        }
        for m in covers(top) {
            let mut next = chain.clone();
            next.push(m);
            stack.push(next);
        }
    }
    out.sort();
    out
}
