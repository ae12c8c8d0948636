use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("signature must have at least one entry")]
    EmptySignature,
    #[error("sum of zero orders {0} is odd")]
    OddOrderSum(i64),
    #[error("zero order {0} is negative")]
    NegativeOrder(i64),
    #[error("lcm of (m_i + 1) overflows 64-bit integers")]
    EllOverflow,
    #[error("inputs {0} and {1} are not coprime")]
    NotCoprime(i64, i64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("generator `{name}`: {reason}")]
    BadGenerator { name: String, reason: String },
    #[error("degree {requested} exceeds the degree cap {cap}; raise the cap (--max-level)")]
    DegreeCapExceeded { requested: i64, cap: i64 },
    #[error("the ring does not contain all monomials of order >= {bound} on branch {branch}")]
    ConductorBoundViolated { branch: usize, bound: i64 },
    #[error("degenerate denominator: 13*chi1 equals chi2")]
    DegenerateDenominator,
    #[error("divisor has {got} coefficients, model expects {expected}")]
    DivisorLength { expected: usize, got: usize },
    #[error("unsupported divisor {divisor:?} for {model} model")]
    UnsupportedDivisor { model: String, divisor: Vec<i64> },
    #[error("model genus {model} differs from signature genus {signature}")]
    GenusMismatch { model: i64, signature: i64 },
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
