use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{value} is not invertible modulo {modulus}")]
    NotInvertible { value: i64, modulus: i64 },
    #[error("modulus must be positive, got {0}")]
    NonPositiveModulus(i64),
    #[error("gcd({0}, {1}) != 1")]
    NotCoprime(i64, i64),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("order infinite or formula inapplicable: polynomial vanishes at a {0}-th root of unity")]
    RootOfUnity(u64),
    #[error("invalid knot: {0}")]
    InvalidKnot(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polynomial is not of L-space form; requires explicit complex")]
    RequiresExplicitComplex,
    #[error("genus of an explicit complex: use cfk engine")]
    UseCfkEngine,
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("homology did not stabilise up to truncation depth {0}")]
    Truncation(i64),
    #[error("slope must be positive, got {0}")]
    NonPositiveSlope(String),
    #[error("surgery numerators differ ({0} vs {1})")]
    NumeratorMismatch(i64, i64),
    #[error("comparison requires rational homology sphere")]
    ZeroSurgery,
    #[error("torsion window does not cover s-1..=s+1 for s = {0}")]
    InsufficientWindow(i64),
    #[error("inconsistent transfer: gcd({p}, {q}) != 1")]
    InconsistentTransfer { p: i64, q: i64 },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
