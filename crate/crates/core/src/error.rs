use thiserror::Error;

/// Failures while decoding key, ciphertext or parameter encodings.
///
/// Every variant has a stable numeric [`code`](FormatError::code) so callers
/// and tests can tell the failure classes apart without string matching.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("bad magic bytes")]
    BadMagic,
    #[error("unsupported format version {0}")]
    UnsupportedVersion(u8),
    #[error("unexpected object kind {found:#04x}, expected {expected:#04x}")]
    WrongKind { expected: u8, found: u8 },
    #[error("input truncated: needed {needed} more bytes")]
    Truncated { needed: usize },
    #[error("{0} trailing bytes after payload")]
    TrailingBytes(usize),
    #[error("invalid field block: {0}")]
    InvalidField(String),
    #[error("invalid group block: {0}")]
    InvalidGroup(String),
    #[error("coefficient {value} out of range for q = {q}")]
    CoefficientOutOfRange { value: u8, q: u32 },
    #[error("wrong length: expected {expected} bytes, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("invalid secret key: {0}")]
    InvalidSecretKey(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid scheme parameters: {0}")]
    InvalidParams(String),
}

impl FormatError {
    pub fn code(&self) -> u8 {
        match self {
            FormatError::BadMagic => 1,
            FormatError::UnsupportedVersion(_) => 2,
            FormatError::WrongKind { .. } => 3,
            FormatError::Truncated { .. } => 4,
            FormatError::TrailingBytes(_) => 5,
            FormatError::InvalidField(_) => 6,
            FormatError::InvalidGroup(_) => 7,
            FormatError::CoefficientOutOfRange { .. } => 8,
            FormatError::WrongLength { .. } => 9,
            FormatError::InvalidSecretKey(_) => 10,
            FormatError::Parse(_) => 11,
            FormatError::InvalidParams(_) => 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Param(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("matrix is singular")]
    Singular,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("group structure error: {0}")]
    Structure(String),
    #[error("group ordering error: {0}")]
    Ordering(String),
    #[error("sampling failed after {0} attempts")]
    Sampling(usize),
    #[error("rank support recovery failed")]
    DecodeFailure,
    #[error("decapsulation failed")]
    DecapFailure,
    #[error("format error: {0}")]
    Format(#[from] FormatError),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Param(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
