//! Piecewise-monomial functions on multiplicative intervals and the class
//! `Λ_p` of increasing bijections of `[0,1]` with p-power local degrees.
//!
//! All computation happens in exponent coordinates `x = v(r)`, where a
//! monomial `c·r^e` becomes the affine map `x ↦ v(c) + e·x`.

pub mod error;
pub mod lambda;
pub mod piecewise;
pub mod power;
pub mod search;
pub mod sweep;

pub use error::LambdaError;
pub use lambda::{chain_condition_holds, compose_chain, make_lambda, LambdaP};
pub use piecewise::{Monomial, PiecewiseMonomial};
pub use power::PiecewisePower;
