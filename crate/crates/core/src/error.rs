use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a chain complex: {0}")]
    NotAComplex(String),
    #[error("not a double complex: {0}")]
    NotADoubleComplex(String),
    #[error("simplicial identity violated: {0}")]
    SimplicialIdentityViolation(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("not an automorphism: {0}")]
    NotAnAutomorphism(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("truncation too small: degree {degree} needs truncation at least {needed}, got {got}")]
    TruncationTooSmall { degree: usize, needed: usize, got: usize },
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),
    #[error("invalid coefficient ring: {0}")]
    InvalidCoefficients(String),
    #[error("invalid monomial: {0}")]
    InvalidMonomial(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
