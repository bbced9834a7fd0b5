use thiserror::Error;

/// Errors produced by the code construction, decoding and simulation layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polynomial {poly:#x} is not primitive for GF(2^{degree}) (cycle length {cycle})")]
    NonPrimitivePolynomial { degree: u32, poly: u32, cycle: usize },

    #[error("invalid field parameters: {0}")]
    InvalidField(String),

    #[error("t*r + 1 = {needed} does not fit below code length {length}")]
    CapacityExceeded { needed: usize, length: usize },

    #[error("degenerate dimensions: {0}")]
    DegenerateDims(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("parity-check matrix has rank {rank}, expected {rows}")]
    RankDeficient { rank: usize, rows: usize },

    #[error("malformed header: {0}")]
    MalformedHeader(String),

    #[error("row {row}: expected {expected} columns, found {actual}")]
    RowLengthMismatch { row: usize, expected: usize, actual: usize },

    #[error("malformed row: {0}")]
    MalformedRow(String),

    #[error("rank {rank} exceeds universe size {n}")]
    RankOutOfRange { rank: usize, n: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("candidate list is empty")]
    EmptyCandidateList,

    #[error("code does not support bounded-distance decoding: {0}")]
    NotBch(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
