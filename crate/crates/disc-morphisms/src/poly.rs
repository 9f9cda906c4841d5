//! Dense-enough exact polynomials over ℚ, keyed by exponent.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use valuation_core::Rational;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QPoly {
    coeffs: BTreeMap<u32, Rational>,
}

impl QPoly {
    pub fn new(coeffs: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut out = QPoly::default();
        for (k, c) in coeffs {
            out.add_term(k, c);
        }
        out
    }

    pub fn constant(c: Rational) -> Self {
        Self::new([(0, c)])
    }

    /// `T`.
    pub fn x() -> Self {
        Self::new([(1, Rational::one())])
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, Rational> {
        &self.coeffs
    }

    pub fn coeff(&self, k: u32) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    fn add_term(&mut self, k: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(*k, -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = QPoly::default();
        for (a, x) in &self.coeffs {
            for (b, y) in &other.coeffs {
                out.add_term(a + b, x * y);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|(k, x)| (*k, x * c)))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    /// `self(inner)` by Horner's rule.
    pub fn compose(&self, inner: &Self) -> Self {
        let Some(d) = self.degree() else {
            return QPoly::default();
        };
        let mut acc = Self::constant(self.coeff(d));
        for k in (0..d).rev() {
            acc = acc.mul(inner).add(&Self::constant(self.coeff(k)));
        }
        acc
    }

    /// `u ↦ self(a + u)`.
    pub fn shift(&self, a: &Rational) -> Self {
        self.compose(&Self::new([(0, a.clone()), (1, Rational::one())]))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs.iter().filter(|(k, _)| **k > 0).map(|(k, c)| (k - 1, c * Rational::from_integer((*k).into()))),
        )
    }

    pub fn eval(&self, a: &Rational) -> Rational {
        self.coeffs.iter().map(|(k, c)| c * num_traits::pow(a.clone(), *k as usize)).sum()
    }
}
