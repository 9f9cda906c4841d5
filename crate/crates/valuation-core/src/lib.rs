//! Exact scalar arithmetic on the value group `p^Q ∪ {0}`.
//!
//! Every norm, radius and break-point in the workspace is a [`LogValue`]:
//! the value `p^{-v}` is stored through its exponent `v`, an exact rational,
//! with `v = ∞` standing for the value zero. [`Prime`] carries the base.
//! The [`par`] module holds the sequential/parallel switch used by the
//! suite-level sweeps of the downstream crates.

pub mod error;
pub mod logvalue;
pub mod par;
pub mod prime;
pub mod rational;
pub mod valuation;

pub use error::ValuationError;
pub use logvalue::LogValue;
pub use par::Exec;
pub use prime::Prime;
pub use rational::{fmt_rational, int, parse_rational, rat, Rational};
pub use valuation::{binomial_valuation, generalized_binomial_valuation, int_valuation, log_norm, padic_valuation};
