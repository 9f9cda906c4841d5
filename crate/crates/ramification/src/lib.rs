//! Finite groups with inertia functions: ramification filtrations,
//! Herbrand functions and canonical towers.
//!
//! Groups are multiplication tables of order at most 512. Subgroups are
//! membership bitsets. An inertia function assigns each element a value in
//! `[0,1]`; its level sets give the filtration `G_r = {σ : i(σ) ≤ r}`.

pub mod catalog;
pub mod error;
pub mod group;
pub mod herbrand;
pub mod inertia;
pub mod subgroup;
pub mod sweep;
pub mod tower;

pub use error::RamificationError;
pub use group::FiniteGroup;
pub use herbrand::{herbrand_galois, herbrand_on_subgroup, herbrand_relative, ramification_filtration};
pub use inertia::{make_filtration_inertia, validate_inertia, InertiaFunction, InertiaReport};
pub use subgroup::Subgroup;
pub use tower::{canonical_tower, enumerate_admissible_chains, verify_tower, Tower, TowerReport};
