//! Strictly increasing piecewise-monomial functions.

use std::ops::Deref;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use valuation_core::LogValue;

use crate::{LambdaError, Monomial, PiecewiseMonomial};

/// A [`PiecewiseMonomial`] whose exponents are all positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiecewisePower(PiecewiseMonomial);

impl PiecewisePower {
    pub fn new(f: PiecewiseMonomial) -> Result<Self, LambdaError> {
        if !f.is_increasing() {
            return Err(LambdaError::NotIncreasing);
        }
        Ok(PiecewisePower(f))
    }

    pub fn from_parts(
        lo: LogValue,
        hi: LogValue,
        breaks: Vec<LogValue>,
        pieces: Vec<Monomial>,
    ) -> Result<Self, LambdaError> {
        Self::new(PiecewiseMonomial::new(lo, hi, breaks, pieces)?)
    }

    pub fn identity(lo: LogValue, hi: LogValue) -> Result<Self, LambdaError> {
        Ok(PiecewisePower(PiecewiseMonomial::identity(lo, hi)?))
    }

    pub fn general(&self) -> &PiecewiseMonomial {
        &self.0
    }

    pub fn into_general(self) -> PiecewiseMonomial {
        self.0
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &PiecewisePower) -> Result<Self, LambdaError> {
        Ok(PiecewisePower(self.0.compose(&g.0)?))
    }

    pub fn invert(&self) -> Self {
        PiecewisePower(self.0.invert().expect("increasing functions invert"))
    }
}

impl Deref for PiecewisePower {
    type Target = PiecewiseMonomial;
    fn deref(&self) -> &PiecewiseMonomial {
        &self.0
    }
}

impl Serialize for PiecewisePower {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PiecewisePower {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        PiecewisePower::new(PiecewiseMonomial::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
