//! Finite groups as multiplication tables.
//!
//! Element numbering of the constructors:
//! - `cyclic(n)`: `k` is `g^k`.
//! - `direct_product(A, B)`: `(a, b)` is `a·|B| + b`.
//! - `semidirect_cyclic(m, n, k)`: `x^a y^b` is `a + m·b`, with `y x y^{-1} = x^k`.
//! - `dihedral(n)`: `semidirect_cyclic(n, 2, n-1)`, so `r^a s^b` is `a + n·b`.
//! - `dicyclic(n)`: `x^a y^b` (`0 ≤ a < 2n`, `b ∈ {0,1}`) is `a + 2n·b`.
//! - `semidirect(N, n, φ)`: `(u, y^b)` is `u + |N|·b`.
//! - `from_permutations`: breadth-first closure order starting at the identity.

use std::collections::HashMap;

use crate::RamificationError;

pub const MAX_ORDER: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<u16>,
    identity: usize,
    inverse: Vec<u16>,
}

impl FiniteGroup {
    /// Validates closure, identity, inverses and associativity.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self, RamificationError> {
        let n = rows.len();
        if n == 0 || n > MAX_ORDER {
            return Err(RamificationError::OrderOutOfRange(n));
        }
        if rows.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(RamificationError::InvalidTable("table must be n×n with entries < n".into()));
        }
        let table: Vec<u16> = rows.iter().flatten().map(|&x| x as u16).collect();
        let m = |a: usize, b: usize| table[a * n + b] as usize;
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| m(e, x) == x && m(x, e) == x))
            .ok_or_else(|| RamificationError::InvalidTable("no identity".into()))?;
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| m(a, b) == identity && m(b, a) == identity)
                    .map(|b| b as u16)
                    .ok_or_else(|| RamificationError::InvalidTable(format!("element {a} has no inverse")))
            })
            .collect::<Result<Vec<u16>, _>>()?;
        for a in 0..n {
            for b in 0..n {
                let ab = m(a, b);
                for c in 0..n {
                    if m(ab, c) != m(a, m(b, c)) {
                        return Err(RamificationError::InvalidTable(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(FiniteGroup { n, table, identity, inverse })
    }

    /// Builds from a multiplication closure already known to define a group.
    fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, RamificationError> {
        let rows = (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect();
        Self::from_table(rows)
    }

    pub fn cyclic(n: usize) -> Result<Self, RamificationError> {
        Self::from_fn(n, |a, b| (a + b) % n)
    }

    /// `(Z/p)^k`.
    pub fn elementary_abelian(p: usize, k: u32) -> Result<Self, RamificationError> {
        let mut g = Self::cyclic(1)?;
        for _ in 0..k {
            g = Self::direct_product(&g, &Self::cyclic(p)?)?;
        }
        Ok(g)
    }

    pub fn direct_product(a: &Self, b: &Self) -> Result<Self, RamificationError> {
        let (na, nb) = (a.n, b.n);
        Self::from_fn(na * nb, |x, y| {
            let (xa, xb) = (x / nb, x % nb);
            let (ya, yb) = (y / nb, y % nb);
            a.mul(xa, ya) * nb + b.mul(xb, yb)
        })
    }

    /// `Z/m ⋊ Z/n` where the generator of `Z/n` acts by `x ↦ x^k`.
    pub fn semidirect_cyclic(m: usize, n: usize, k: usize) -> Result<Self, RamificationError> {
        let mut kp = 1 % m;
        for _ in 0..n {
            kp = kp * k % m;
        }
        if kp != 1 % m || gcd(k, m) != 1 {
            return Err(RamificationError::InvalidConstruction(format!(
                "x ↦ x^{k} is not an automorphism of Z/{m} of order dividing {n}"
            )));
        }
        let kpow = |b: usize| (0..b).fold(1 % m, |acc, _| acc * k % m);
        // (x^a y^b)(x^c y^d) = x^{a + k^b c} y^{b+d}
        Self::from_fn(m * n, |x, y| {
            let (a, b) = (x % m, x / m);
            let (c, d) = (y % m, y / m);
            (a + kpow(b) * c) % m + m * ((b + d) % n)
        })
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> Result<Self, RamificationError> {
        if n < 1 {
            return Err(RamificationError::InvalidConstruction("dihedral needs n ≥ 1".into()));
        }
        Self::semidirect_cyclic(n, 2, n - 1)
    }

    /// Dicyclic group of order `4n`: `x^{2n} = 1`, `y² = x^n`, `y x y^{-1} = x^{-1}`.
    pub fn dicyclic(n: usize) -> Result<Self, RamificationError> {
        if n < 1 {
            return Err(RamificationError::InvalidConstruction("dicyclic needs n ≥ 1".into()));
        }
        let m = 2 * n;
        Self::from_fn(2 * m, |x, y| {
            let (a, b) = (x % m, x / m);
            let (c, d) = (y % m, y / m);
            let c = if b == 1 { (m - c) % m } else { c };
            let extra = if b == 1 && d == 1 { n } else { 0 };
            (a + c + extra) % m + m * ((b + d) % 2)
        })
    }

    /// `N ⋊ Z/n` where the generator acts through the automorphism `phi`
    /// (a permutation of the elements of `N`).
    pub fn semidirect(base: &Self, n: usize, phi: &[usize]) -> Result<Self, RamificationError> {
        let nb = base.n;
        let is_perm = {
            let mut seen = vec![false; nb];
            phi.len() == nb && phi.iter().all(|&x| x < nb && !std::mem::replace(&mut seen[x], true))
        };
        let hom = is_perm && (0..nb).all(|a| (0..nb).all(|b| phi[base.mul(a, b)] == base.mul(phi[a], phi[b])));
        let powers: Vec<Vec<usize>> = if is_perm {
            let mut out = vec![(0..nb).collect::<Vec<_>>()];
            for _ in 1..=n {
                let last = out.last().expect("nonempty");
                out.push(last.iter().map(|&x| phi[x]).collect());
            }
            out
        } else {
            vec![]
        };
        if !hom || powers[n] != powers[0] {
            return Err(RamificationError::InvalidConstruction(
                "map is not an automorphism of order dividing n".into(),
            ));
        }
        // (u y^b)(w y^d) = u φ^b(w) y^{b+d}
        Self::from_fn(nb * n, |x, y| {
            let (u, b) = (x % nb, x / nb);
            let (w, d) = (y % nb, y / nb);
            base.mul(u, powers[b][w]) + nb * ((b + d) % n)
        })
    }

    /// The group generated by permutations of `{0, …, d-1}`.
    pub fn from_permutations(gens: &[Vec<usize>]) -> Result<Self, RamificationError> {
        let d = gens.first().map_or(0, Vec::len);
        let valid = gens.iter().all(|g| {
            let mut s = g.clone();
            s.sort_unstable();
            g.len() == d && s.into_iter().eq(0..d)
        });
        if !valid {
            return Err(RamificationError::InvalidConstruction("generators are not permutations".into()));
        }
        let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { (0..d).map(|i| a[b[i]]).collect() };
        let mut elems: Vec<Vec<usize>> = vec![(0..d).collect()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(elems[0].clone(), 0)]);
        let mut k = 0;
        while k < elems.len() {
            for g in gens {
                let h = compose(&elems[k], g);
                if !index.contains_key(&h) {
                    if elems.len() == MAX_ORDER {
                        return Err(RamificationError::OrderOutOfRange(MAX_ORDER + 1));
                    }
                    index.insert(h.clone(), elems.len());
                    elems.push(h);
                }
            }
            k += 1;
        }
        Self::from_fn(elems.len(), |a, b| index[&compose(&elems[a], &elems[b])])
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g a g^{-1}`.
    pub fn conj(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|a| (0..self.n).map(|b| self.mul(a, b)).collect()).collect()
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
