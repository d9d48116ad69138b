use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum HexError {
    #[error("degree must be non-negative, got {0}")]
    NegativeDegree(i64),

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: String,
        reason: &'static str,
    },

    #[error("grid size {given} is too small, exactness requires at least {required}")]
    GridTooSmall { required: usize, given: usize },

    #[error("grid sizes differ: {left} vs {right}")]
    GridMismatch { left: usize, right: usize },

    #[error("point ({0}, {1}, {2}) is off the plane t1 + t2 + t3 = 0")]
    OffPlane(f64, f64, f64),

    #[error("input is identically zero")]
    ZeroInput,

    #[error("imaginary residue {residue:e} exceeds {limit:e}")]
    ImaginaryResidue { residue: f64, limit: f64 },

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] IoError),
}

/// `std::io::Error` is not `Clone`, so it is carried as its rendered message.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("{0}")]
pub struct IoError(pub String);

impl From<std::io::Error> for HexError {
    fn from(e: std::io::Error) -> Self {
        HexError::Io(IoError(e.to_string()))
    }
}

impl From<csv::Error> for HexError {
    fn from(e: csv::Error) -> Self {
        HexError::Parse(e.to_string())
    }
}

impl From<serde_json::Error> for HexError {
    fn from(e: serde_json::Error) -> Self {
        HexError::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, HexError>;

pub(crate) fn invalid(name: &'static str, value: impl ToString, reason: &'static str) -> HexError {
    HexError::InvalidParameter {
        name,
        value: value.to_string(),
        reason,
    }
}
