use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("modulus must be prime, got {0}")]
    NotPrime(u64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("not invertible")]
    NotInvertible,
    #[error("label mismatch: {0}")]
    LabelMismatch(String),
    #[error("unknown label {0}")]
    UnknownLabel(usize),
    #[error("pivot block singular")]
    SingularPivotBlock,
    #[error("matrix is singular")]
    Singular,
    #[error("support is cyclic")]
    CyclicSupport,
    #[error("invalid matching: {0}")]
    InvalidMatching(String),
    #[error("label {0} lies in the basis")]
    InBasis(usize),
    #[error("instance too large: {0} elements (limit {1})")]
    InstanceTooLarge(usize, usize),
    #[error("operator does not square to zero")]
    NonZeroSquare,
    #[error("only 2-nilpotent supported")]
    NotTwoNilpotent,
    #[error("operator is not nilpotent")]
    NotNilpotent,
    #[error("grades are not monotone along the support at ({0}, {1})")]
    NonMonotone(usize, usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid distance matrix: {0}")]
    InvalidDistances(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
}
