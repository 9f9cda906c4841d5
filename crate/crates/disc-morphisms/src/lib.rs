//! Finite morphisms of closed discs given by finitely supported series.
//!
//! Radii and coefficient norms are [`LogValue`](valuation_core::LogValue)s.
//! Everything here is exact: polygons, profiles and the radiality
//! certificate are computed from rational valuations, and exact-mode
//! recentering works with rational polynomials.

pub mod error;
pub mod factor;
pub mod norms;
pub mod poly;
pub mod polygon;
pub mod radial;
pub mod series;
pub mod sheet;

pub use error::DiscError;
pub use factor::{verify_disc_factorization, FactorizationReport};
pub use norms::{generic_norms, profile_at_point, residual_degrees, restrict_profile, ResidualDegrees};
pub use poly::QPoly;
pub use polygon::{newton_polygon, profile, NewtonPolygon, Profile};
pub use radial::{classify_radiality, radial_arithmetic_check, RadialityCertificate, Verdict};
pub use series::{taylor_recenter, Coefficients, ValuedSeries};
