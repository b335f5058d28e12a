use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{what}: requested {requested} exceeds the configured ceiling {limit}")]
    BudgetExceeded {
        what: &'static str,
        requested: u64,
        limit: u64,
    },
    #[error("unsupported dimension {0} (expected 2, 3 or 4)")]
    InvalidDimension(usize),
    #[error("point set is empty")]
    EmptySet,
    #[error("point set needs at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },
    #[error("shift vector must be nonzero")]
    ZeroShift,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("value {value} outside the domain {domain}")]
    Domain { value: f64, domain: &'static str },
    #[error("points {0} and {1} coincide; energy is infinite")]
    CoincidentPoints(usize, usize),
    #[error("{n} is not a sum of {dim} squares")]
    NonRepresentable { n: u64, dim: usize },
    #[error("neither {n}-1 nor {n}-4 is a sum of three squares (residues {r1} and {r4} mod 8 after removing powers of 4)")]
    ResidueObstruction { n: u64, r1: u64, r4: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Config(#[from] toml::de::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
