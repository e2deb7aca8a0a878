use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,
    #[error("matrix has {cols} columns, at most {max} are supported")]
    TooManyColumns { cols: usize, max: usize },
    #[error("row {row} has length {len}, expected {expected}")]
    RaggedRows {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("generator rows are linearly dependent or zero")]
    RankDeficient,
    #[error("dimension {m} exceeds the enumeration limit {max}")]
    DimensionTooLarge { m: usize, max: usize },
    #[error("dual of a code with m = n is the zero code; dual distance is undefined")]
    FullSpace,
    #[error("coordinate {index} out of range for length {n}")]
    InvalidCoordinate { index: usize, n: usize },
    #[error("operation leaves the zero code")]
    ZeroCode,
    #[error("parameters too large: {0}")]
    TooLarge(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("weight distribution is not that of a linear code: {0}")]
    NotADistribution(String),
    #[error("no admissible length up to the scan cap {cap}")]
    ScanCapExceeded { cap: usize },
    #[error("parity case {0} is inadmissible for these distances")]
    InadmissibleCase(String),
    #[error("unknown catalog key ({d}, {dperp})")]
    UnknownKey { d: usize, dperp: usize },
    #[error("catalog entry {name}: {msg}")]
    CatalogMismatch { name: String, msg: String },
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
}
