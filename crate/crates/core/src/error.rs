use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("the zero function has no smallest monomial")]
    ZeroFunction,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("exponent {0:?} is not in the staircase")]
    NotInStaircase(Vec<u32>),

    #[error("degenerate polygon: {0}")]
    Degenerate(&'static str),

    #[error("witness insufficient: w^2 = {w_squared} < 2 vol(P) = {two_vol}")]
    WitnessInsufficient { w_squared: String, two_vol: String },

    #[error("weights {0:?} are not coprime")]
    NotCoprime([u64; 3]),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
