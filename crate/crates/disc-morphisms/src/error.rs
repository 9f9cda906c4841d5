use lambda_calc::LambdaError;
use thiserror::Error;
use valuation_core::ValuationError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiscError {
    #[error("series has no nonzero coefficient")]
    EmptySupport,
    #[error("series has a constant term; coordinates must send 0 to 0")]
    ConstantTerm,
    #[error("index {0} is not allowed here")]
    IndexOutOfRange(i64),
    #[error("the domain radius must be nonzero")]
    ZeroRadius,
    #[error("center {0} lies outside the disc")]
    CenterOutsideDisc(String),
    #[error("operation needs exact coefficients")]
    SkeletonModeUnsupported,
    #[error("radius {0} is outside the allowed range")]
    RadiusOutOfRange(String),
    #[error("normalized profile is not in Λ_p: {0}")]
    NotInLambdaP(String),
    #[error("disc degree {disc_degree} is not divisible by inseparable degree {inseparable}")]
    NonIntegralSeparableDegree { disc_degree: u64, inseparable: u64 },
    #[error("composition differs from the target at index {index}: expected {expected}, found {found}")]
    CompositionMismatch { index: i64, expected: String, found: String },
    #[error("series use different primes")]
    PrimeMismatch,
    #[error("invalid series description: {0}")]
    Schema(String),
    #[error(transparent)]
    Lambda(#[from] LambdaError),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
}
