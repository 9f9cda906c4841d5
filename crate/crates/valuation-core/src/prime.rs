use serde::{Deserialize, Serialize};

use crate::ValuationError;

/// A prime `p ≥ 2`, checked by trial division when built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self, ValuationError> {
        if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(ValuationError::NotPrime(p));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    /// `p^k`, panicking on overflow of `u64`.
    pub fn pow(self, k: u32) -> u64 {
        self.0.checked_pow(k).expect("prime power overflows u64")
    }

    /// `Some(k)` when `n = p^k`.
    pub fn log_exact(self, mut n: u64) -> Option<u32> {
        if n == 0 {
            return None;
        }
        let mut k = 0;
        while n.is_multiple_of(self.0) {
            n /= self.0;
            k += 1;
        }
        (n == 1).then_some(k)
    }
}

impl TryFrom<u64> for Prime {
    type Error = ValuationError;
    fn try_from(p: u64) -> Result<Self, Self::Error> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0
    }
}

impl std::fmt::Display for Prime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}
