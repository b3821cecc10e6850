use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("valuation of zero")]
    ValuationOfZero,
    #[error("operation on the zero function")]
    ZeroFunction,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("point is not on the curve: {0}")]
    NotOnCurve(String),
    #[error("indeterminate value at {point}: valuation of numerator {num_valuation}, of denominator {den_valuation}")]
    Indeterminate {
        point: String,
        num_valuation: i64,
        den_valuation: i64,
    },
    #[error("singular fractional-linear map")]
    SingularMap,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JacobianError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("degree mismatch: divisor has degree {actual}, expected {expected}")]
    DegreeMismatch { expected: i64, actual: i64 },
    #[error("subset of branch points has odd size {0}")]
    OddSubset(usize),
    #[error("{0} is not a branch point of the curve")]
    NotBranchPoint(String),
    #[error("basepoint must be a Weierstrass point, got {0}")]
    BasepointNotWeierstrass(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Jacobian(#[from] JacobianError),
    #[error("not a 4-configuration datum: {0}")]
    NotFourConfiguration(String),
    #[error("support of the divisor contains the non-rational closed point {0}; it cannot be pushed forward")]
    NonRationalSupport(String),
    #[error("expected genus {expected}, curve has genus {actual}")]
    Genus { expected: usize, actual: usize },
    #[error("precycle ambient degrees differ: {0} vs {1}")]
    AmbientMismatch(i64, i64),
    #[error("invalid datum: {0}")]
    InvalidDatum(String),
}
