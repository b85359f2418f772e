use alloc::string::String;

/// Errors raised by constructors and solvers. Axiom failures are reported
/// through [`crate::report::Report`] instead.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not finitely generated projective: {0}")]
    NotProjective(String),
    #[error("map is not well defined on the quotient: {0}")]
    IllDefined(String),
    #[error("canonical map not bijective at {0}")]
    NotBijective(String),
    #[error("missing antipode")]
    MissingAntipode,
    #[error("antipode not invertible at {0}")]
    AntipodeNotInvertible(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
}
