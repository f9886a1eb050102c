use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not Hermitian: max |A - A*| = {max_asymmetry:e}")]
    NotHermitian { max_asymmetry: f64 },
    #[error("matrix is not positive semi-definite: pivot estimate {min_eigen_estimate:e} below -{threshold:e}")]
    NotPsd { min_eigen_estimate: f64, threshold: f64 },
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("index out of range: {index} not in 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("malformed permutation: {0}")]
    BadPermutation(String),
    #[error("group too large: order exceeds {cap}")]
    GroupTooLarge { cap: usize },
    #[error("enumeration of {size} items exceeds cap {cap}")]
    EnumerationTooLarge { size: u128, cap: u128 },
    #[error("character and group do not match")]
    GroupMismatch,
    #[error("element {0} is not in the group")]
    ElementNotInGroup(String),
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("character table validation failed: {0}")]
    ValidationFailed(String),
    #[error("character is not irreducible: (chi, chi) = {norm}")]
    ChiNotIrreducible { norm: f64 },
    #[error("character is not linear (degree {degree})")]
    ChiNotLinear { degree: f64 },
    #[error("alpha or beta is not in Omega")]
    AlphaBetaNotInOmega,
    #[error("matrix too large for this operation: n = {n}, limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("n = {0} is too small; the bound requires n > 3")]
    NTooSmall(usize),
    #[error("first column of the matrix has a zero entry at row {0}")]
    ZeroInFirstColumn(usize),
    #[error("lambda_{index} = {value} outside (0, {bound}]")]
    LambdaOutOfRange { index: usize, value: f64, bound: f64 },
    #[error("internal invariant violated: {0}")]
    InvariantViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
