//! Finite morphisms of open annuli and harmonicity at Gauss points.
//!
//! Annulus morphisms are Laurent polynomials on `r₁ < |T| < 1`. Their
//! degree, `σ`-exponent and break flows feed the different identity; the
//! directions at `η_{0,1}` feed Riemann–Hurwitz and the layer identities.

pub mod annulus;
pub mod directions;
pub mod error;
pub mod flows;
pub mod harmonicity;

pub use annulus::{
    annulus_degree, sigma_composition_check, sigma_epsilon, AnnulusMorphism, Mode, SigmaCompositionReport,
};
pub use directions::{critical_residues, direction_data, Direction, DirectionData};
pub use error::AnnulusError;
pub use flows::{boundary_slope, break_flows, different_identity_check, DifferentReport, Flows};
pub use harmonicity::{gauss_harmonicity, Convention, ConventionReport, HarmonicityReport, LayerCheck, RhCheck};
