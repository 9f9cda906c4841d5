use lambda_calc::LambdaError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RamificationError {
    #[error("group order {0} outside 1..=512")]
    OrderOutOfRange(usize),
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("invalid group construction: {0}")]
    InvalidConstruction(String),
    #[error("the element set is not a subgroup")]
    NotASubgroup,
    #[error("a subgroup in the chain is not normal")]
    NonNormalSubgroup,
    #[error("filtration values must be strictly increasing in (0,1]")]
    NonMonotoneValues,
    #[error("chain must increase strictly from {{e}} to G, with one value per step")]
    InvalidChain,
    #[error("invalid inertia function: {0}")]
    InvalidInertia(String),
    #[error("|G_r| = {order} at r = {at} is not a power of {p}")]
    PGroupViolation { at: String, order: usize, p: u64 },
    #[error(transparent)]
    Lambda(#[from] LambdaError),
}
