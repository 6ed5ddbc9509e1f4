use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field degree {0} outside the supported range 2..=63")]
    FieldDegree(u32),
    #[error("modulus {0:#x} is not an irreducible polynomial of degree {1}")]
    Reducible(u64, u32),
    #[error("field of size 2^{degree} is too small: need at least {needed} elements")]
    FieldTooSmall { degree: u32, needed: u64 },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(u32, u32),
    #[error("extensor dimension {0} exceeds the supported cap of {cap}", cap = crate::algebra::MAX_DIMS)]
    DimensionCap(u32),
    #[error("operation requires a characteristic-2 coefficient ring")]
    NotCharacteristicTwo,
    #[error("operation requires the integer coefficient ring")]
    NotIntegers,
    #[error("vertex {0} out of range (n = {1})")]
    VertexOutOfRange(usize, usize),
    #[error("element {0} out of range (universe size {1})")]
    ElementOutOfRange(usize, usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid update: {0}")]
    InvalidUpdate(String),
    #[error("unknown or dead handle {0}")]
    UnknownHandle(u64),
    #[error("instance too large for brute force: {0}")]
    TooLarge(String),
    #[error("malformed state: {0}")]
    Format(String),
    #[error("unsupported state version {found} (expected {expected})")]
    Version { found: u16, expected: u16 },
}

pub type Result<T> = std::result::Result<T, Error>;
