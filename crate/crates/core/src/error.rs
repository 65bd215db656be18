use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("variable `{0}` has no pure power among the relations")]
    NotZeroDimensional(String),
    #[error("not a monomial: `{0}`")]
    NotMonomial(String),
    #[error("multiplication is not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("multiplication is not commutative at basis pair ({0}, {1})")]
    NotCommutative(usize, usize),
    #[error("basis element {0} is not a unit for multiplication")]
    NotUnital(usize),
    #[error("algebra is not local: {0}")]
    NotLocal(String),
    #[error("arguments live over different algebras")]
    MixedAlgebras,
    #[error("ideal is not proper")]
    ImproperIdeal,
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("module is not totally reflexive: {0}")]
    NotTotallyReflexive(String),
    #[error("degree {degree} needs a window of {needed} but the cap is {cap}")]
    WindowTooSmall { degree: i64, needed: usize, cap: usize },
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("dimension {dim} exceeds the configured cap {cap}")]
    CapExceeded { dim: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
