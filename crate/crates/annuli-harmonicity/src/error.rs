use disc_morphisms::DiscError;
use lambda_calc::LambdaError;
use thiserror::Error;
use valuation_core::ValuationError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnnulusError {
    #[error("Laurent polynomial has no nonzero term")]
    EmptySeries,
    #[error("inner radius {0} must lie in [0, 1)")]
    InnerRadiusOutOfRange(String),
    #[error("dominating index changes at radius {at}; shrink the annulus")]
    MultipleSlopesOnAnnulus { at: String },
    #[error("morphism is not aligned: {0}")]
    NotAligned(String),
    #[error("no stable window next to the outer boundary")]
    NoStableWindow,
    #[error("center {0} does not give a direction at the Gauss point")]
    NotOnUnitCircle(String),
    #[error("not finite at the Gauss point: {0}")]
    NonFiniteAtGaussPoint(String),
    #[error("coordinate function f_[{index}] has residue roots outside F_p; those directions cannot be enumerated with rational centers")]
    ResidueRootsOutsideFp { index: u32 },
    #[error("exact composition needs nonnegative indices")]
    LaurentComposition,
    #[error("residue classes are enumerated only for p ≤ 2^20, got {0}")]
    PrimeTooLarge(u64),
    #[error("operation needs exact coefficients")]
    SkeletonModeUnsupported,
    #[error(
        "skeleton valuations leave the norm of f_[{index}] at center {center} undetermined; give exact coefficients"
    )]
    SkeletonTie { index: u32, center: String },
    #[error("morphisms use different primes")]
    PrimeMismatch,
    #[error("invalid annulus description: {0}")]
    Schema(String),
    #[error(transparent)]
    Disc(#[from] DiscError),
    #[error(transparent)]
    Lambda(#[from] LambdaError),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
}
