use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValuationError {
    #[error("division by the zero value")]
    DivisionByZero,
    #[error("zero raised to a non-positive power")]
    ZeroToNonpositivePower,
    #[error("the valuation of zero is infinite")]
    ZeroInput,
    #[error("binomial index k = {k} outside 0..={n}")]
    KOutOfRange { n: u64, k: u64 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
    #[error("value zero has no finite exponent")]
    InfiniteExponent,
}
