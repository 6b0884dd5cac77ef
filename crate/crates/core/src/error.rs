use thiserror::Error;

/// Errors raised by the library. Every variant is a caller-facing condition;
/// internal invariant violations panic instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("enumeration bound exceeded: {what} needs {projected} elements, bound is {bound}")]
    BoundExceeded {
        what: String,
        projected: String,
        bound: u64,
    },
    #[error("characteristic 2 is not supported for hermitian forms or unitary groups")]
    CharacteristicTwo,
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("polynomial is not self-U-reciprocal")]
    NotSelfUReciprocal,
    #[error("polynomial coefficients do not lie in the base field")]
    NotOverBaseField,
    #[error("matrix is not conjugate-symmetric")]
    NotConjugateSymmetric,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("element is not a member of the group")]
    NotAMember,
    #[error("type is not semisimple")]
    NotSemisimple,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("closure search failed to reach the certified order {expected} (got {got})")]
    ClosureIncomplete { expected: String, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
