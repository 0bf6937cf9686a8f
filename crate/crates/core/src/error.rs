use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("q = {0} is outside the supported range 2..=16")]
    UnsupportedQ(u32),
    #[error("inverse of zero")]
    DivisionByZero,
    #[error("element index {index} out of range for a field of order {order}")]
    ElementIndex { index: usize, order: usize },
    #[error("coefficient vector does not describe a field element")]
    InvalidCoefficients,
    #[error("monomial x^{i} y^{j} has x-exponent outside 0..=q")]
    MonomialRange { i: i64, j: i64 },
    #[error("evaluation point is not in D")]
    NotInD,
    #[error("point index {0} is not in D")]
    PointIndex(usize),
    #[error("oracle infeasible: {0}")]
    OracleInfeasible(String),
    #[error("the definition oracle is limited to q <= 4 (got q = {0})")]
    OracleTooLarge(u32),
    #[error("C({a},{b}) is already the full space")]
    FullSpace { a: i64, b: i64 },
    #[error("segment hypotheses violated: {0}")]
    Hypotheses(String),
    #[error("n = {0} is outside 0..=q")]
    HkRange(i64),
    #[error("overlapping formula ranges disagree at (m, n) = ({m}, {n}): {values:?}")]
    HkInconsistent { m: i64, n: i64, values: Vec<i64> },
    #[error("point is not eligible: {0}")]
    Ineligible(String),
    #[error("({a}, {b}) is outside the supported regimes")]
    OutOfScope { a: i64, b: i64 },
    #[error("witness construction failed: {0}")]
    WitnessExhausted(String),
}
