use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("multi-index degree {degree} exceeds order maximum {max}")]
    OutOfRange { degree: u32, max: u32 },

    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("not a diastasis: pure coefficient at ({row}, {col}) is nonzero")]
    NotADiastasis { row: String, col: String },

    #[error("fixed-point iteration did not stabilize at degree {degree}")]
    Divergence { degree: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("potential is not in Bochner form ({0}); normalize coordinates first")]
    Gauge(String),

    #[error("input is not resolvable: quadratic form value {value} on witness")]
    NotResolvable { value: String },

    #[error("missing base immersion: {0}")]
    MissingBaseMap(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
