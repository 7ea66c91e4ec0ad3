use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("element {0} out of range for field of order {1}")]
    OutOfRange(u64, u64),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("gcd(0, 0) is undefined")]
    ZeroGcd,
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("operation requires a nonconstant polynomial")]
    ConstantPolynomial,
    #[error("degree {degree} exceeds the cap of {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("polynomial must be irreducible")]
    Reducible,
    #[error("equal-degree splitting gave up after {0} attempts")]
    SplitRetries(u32),
    #[error("degenerate f-type {0}: some orbit point is a root")]
    DegenerateType(String),
    #[error("type {0} does not start with s")]
    NotSplitting(String),
    #[error("type length {got} does not match orbit size {expected}")]
    TypeLength { got: usize, expected: usize },
    #[error("orbit type ({m},{n}) does not satisfy the precondition {wanted}")]
    WrongOrbitType { m: usize, n: usize, wanted: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
