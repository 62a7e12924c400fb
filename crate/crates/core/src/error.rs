use thiserror::Error;

/// Errors raised by the library.
///
/// Variants documented as "bug signals" indicate an internal inconsistency
/// (a broken convention or an arithmetic invariant that failed) rather than
/// bad user input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("factor mismatch: {0}")]
    FactorMismatch(String),
    #[error("axis {axis} out of range for a product with {factors} factors")]
    BadAxis { axis: usize, factors: usize },
    #[error("{r} is not a unit modulo {m}")]
    NotAUnit { r: i64, m: u64 },
    #[error("value is not rational: {0}")]
    NotRational(String),
    #[error("value is not an integer: {0}")]
    NotIntegral(String),
    #[error("character table computation failed for {group}: {reason}")]
    TableComputationFailure { group: String, reason: String },
    #[error("shift groups differ: {0} vs {1}")]
    ShiftMismatch(String, String),
    #[error("field modes differ")]
    FieldMismatch,
    #[error("source and target do not match: {0}")]
    ObjectMismatch(String),
    #[error("incomplete catalog: {0}")]
    IncompleteCatalog(String),
    #[error("not a module: {0}")]
    NotAModule(String),
    #[error("coprimality violated: gcd(|{shift}|, |{group}|) = {gcd}")]
    CoprimalityViolated { shift: String, group: String, gcd: usize },
    #[error("{0} is not cyclic")]
    NotCyclic(String),
    #[error("unknown group {0:?}")]
    UnknownGroup(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
