//! How the generic-norm envelope changes along a one-parameter family of
//! points.
//!
//! Each label `i` carries `c_i(x) = min` of affine functions of a parameter
//! `x`. At parameter `x` the envelope of the lines `y ↦ c_i(x) + i·y` is
//! taken over `y > y_min(x)`, with `y_min` affine. Between consecutive
//! events the dominating labels stay fixed and every break is affine in `x`.
//! Events are the kinks of each `c_i`, caller-supplied points, parameters
//! where a break reaches `y_min`, and parameters where three labels become
//! collinear.

use std::collections::BTreeMap;

use lambda_calc::Monomial;
use num_traits::{One, Zero};
use valuation_core::{int, LogValue, Prime, Rational};

use crate::norms::norm_terms;
use crate::polygon::monomial_envelope;
use crate::DiscError;

/// `c + e·x` is stored as the monomial `(coef_v = c, exp = e)`.
pub type Affine = Monomial;

#[derive(Clone, Debug)]
pub struct Sheet {
    labels: BTreeMap<u32, Vec<Affine>>,
    bound: Affine,
}

/// Dominating labels over `y > y_min(x)` and the breaks between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    pub labels: Vec<u32>,
    /// Break positions `y` between consecutive labels, decreasing.
    pub breaks: Vec<Rational>,
}

/// A maximal open parameter interval without events.
#[derive(Clone, Debug)]
pub struct Cell {
    pub lo: Rational,
    pub hi: Option<Rational>,
    pub structure: Structure,
    /// Each break minus `y_min`, as an affine function of `x`, in the same
    /// order as `structure.breaks`.
    pub normalized_breaks: Vec<Affine>,
}

fn solve(a: &Affine) -> Option<Rational> {
    (!a.exp.is_zero()).then(|| -&a.coef_v / &a.exp)
}

fn sub(a: &Affine, b: &Affine) -> Affine {
    Affine::new(&a.coef_v - &b.coef_v, &a.exp - &b.exp)
}

fn div(a: &Affine, d: i64) -> Affine {
    Affine::new(&a.coef_v / int(d), &a.exp / int(d))
}

impl Sheet {
    pub fn new(labels: BTreeMap<u32, Vec<Affine>>, bound: Affine) -> Self {
        Sheet { labels, bound }
    }

    /// Generic norms of a series with coefficient valuations `vals` at the
    /// point of radius `v = sign·x`; the envelope is taken over `s` below
    /// that radius.
    pub fn generic_norms(vals: &BTreeMap<u32, Rational>, p: Prime, sign: i64) -> Self {
        let labels = norm_terms(vals, p)
            .into_iter()
            .map(|(i, terms)| {
                let affs = terms.into_iter().map(|(c, j)| Affine::new(c, int(sign * i64::from(j)))).collect();
                (i, affs)
            })
            .collect();
        Sheet { labels, bound: Affine::new(Rational::zero(), int(sign)) }
    }

    fn active_at(&self, x: &Rational) -> BTreeMap<u32, Affine> {
        self.labels
            .iter()
            .map(|(i, affs)| {
                let best = affs.iter().min_by(|a, b| a.at_x(x).cmp(&b.at_x(x))).expect("nonempty label");
                (*i, best.clone())
            })
            .collect()
    }

    pub fn structure_at(&self, x: &Rational) -> Result<Structure, DiscError> {
        let y0 = self.bound.at_x(x);
        let terms: Vec<(u32, Rational)> = self.active_at(x).iter().map(|(i, a)| (*i, a.at_x(x))).collect();
        let env = monomial_envelope(&LogValue::from_v(y0), &terms)?;
        let breaks = env.breaks().iter().map(|b| b.v().expect("interior").clone()).collect();
        Ok(Structure { labels: env.dominating, breaks })
    }

    fn kinks(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        for affs in self.labels.values() {
            for (k, a) in affs.iter().enumerate() {
                for b in &affs[k + 1..] {
                    out.extend(solve(&sub(a, b)));
                }
            }
        }
        out
    }

    fn hull_events(&self, active: &BTreeMap<u32, Affine>) -> Vec<Rational> {
        let labels: Vec<(&u32, &Affine)> = active.iter().collect();
        let mut out = Vec::new();
        let gap = |a: (&u32, &Affine), b: (&u32, &Affine)| div(&sub(a.1, b.1), i64::from(*b.0) - i64::from(*a.0));
        for (k, &a) in labels.iter().enumerate() {
            for (m, &b) in labels.iter().enumerate().skip(k + 1) {
                let y_ab = gap(a, b);
                out.extend(solve(&sub(&y_ab, &self.bound)));
                for &c in &labels[m + 1..] {
                    out.extend(solve(&sub(&y_ab, &gap(b, c))));
                }
            }
        }
        out
    }

    /// Every event in the open interval `(lo, hi)`, sorted.
    pub fn events(&self, lo: &Rational, hi: Option<&Rational>, extra: &[Rational]) -> Vec<Rational> {
        let inside = |x: &Rational| x > lo && hi.is_none_or(|h| x < h);
        let mut coarse: Vec<Rational> = self.kinks().into_iter().chain(extra.iter().cloned()).filter(inside).collect();
        coarse.sort();
        coarse.dedup();
        let mut out = coarse.clone();
        for (a, b) in cell_bounds(lo, hi, &coarse) {
            let mid = midpoint(&a, b.as_ref());
            let in_cell = |x: &Rational| *x > a && b.as_ref().is_none_or(|h| x < h);
            out.extend(self.hull_events(&self.active_at(&mid)).into_iter().filter(in_cell));
        }
        out.sort();
        out.dedup();
        out
    }

    /// Every event together with one interior point of each cell.
    pub fn sample_points(&self, lo: &Rational, hi: Option<&Rational>, extra: &[Rational]) -> Vec<Rational> {
        let events = self.events(lo, hi, extra);
        let mut out = events.clone();
        out.extend(cell_bounds(lo, hi, &events).iter().map(|(a, b)| midpoint(a, b.as_ref())));
        out.sort();
        out
    }

    /// The cell `(lo, first event)`.
    pub fn first_cell(&self, lo: &Rational, hi: Option<&Rational>, extra: &[Rational]) -> Result<Cell, DiscError> {
        let events = self.events(lo, hi, extra);
        let cell_hi = events.first().cloned().or_else(|| hi.cloned());
        let mid = midpoint(lo, cell_hi.as_ref());
        let structure = self.structure_at(&mid)?;
        let active = self.active_at(&mid);
        let normalized_breaks = structure
            .labels
            .windows(2)
            .map(|w| {
                let y = div(&sub(&active[&w[0]], &active[&w[1]]), i64::from(w[1]) - i64::from(w[0]));
                sub(&y, &self.bound)
            })
            .collect();
        Ok(Cell { lo: lo.clone(), hi: cell_hi, structure, normalized_breaks })
    }
}

fn midpoint(a: &Rational, b: Option<&Rational>) -> Rational {
    match b {
        Some(b) => (a + b) / int(2),
        None => a + Rational::one(),
    }
}

fn cell_bounds(lo: &Rational, hi: Option<&Rational>, cuts: &[Rational]) -> Vec<(Rational, Option<Rational>)> {
    let mut ends: Vec<Option<Rational>> = vec![Some(lo.clone())];
    ends.extend(cuts.iter().cloned().map(Some));
    ends.push(hi.cloned());
    ends.windows(2).map(|w| (w[0].clone().expect("finite lower end"), w[1].clone())).collect()
}
