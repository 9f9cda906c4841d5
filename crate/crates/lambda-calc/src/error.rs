use thiserror::Error;
use valuation_core::ValuationError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LambdaError {
    #[error("break-points must be strictly increasing")]
    NonMonotoneBreaks,
    #[error("local degree exponents must be strictly increasing")]
    NonIncreasingAlphas,
    #[error("the first local degree exponent must be 0")]
    AlphaZeroNonzero,
    #[error("break-point {0} lies outside the open interval (0,1)")]
    BreakOutOfRange(String),
    #[error("{breaks} break-points need {expected} exponents, got {alphas}")]
    LengthMismatch { breaks: usize, alphas: usize, expected: usize },
    #[error("argument {0} outside the domain")]
    OutOfDomain(String),
    #[error("range of the inner function is not inside the domain of the outer one")]
    DomainMismatch,
    #[error("empty or inverted domain")]
    EmptyDomain,
    #[error("pieces do not meet at break-point {0}")]
    Discontinuous(String),
    #[error("piece count does not match break count")]
    PieceCount,
    #[error("break-point {0} is not interior to the domain")]
    BreakNotInterior(String),
    #[error("a piece with exponent <= 0 in a function required to be increasing")]
    NotIncreasing,
    #[error("negative exponent on a domain containing 0")]
    NegativeExponentAtZero,
    #[error("not in Λ_p: {0}")]
    NotLambda(String),
    #[error("objects over different primes")]
    PrimeMismatch,
    #[error(transparent)]
    Valuation(#[from] ValuationError),
}
