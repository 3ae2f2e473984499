use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("station index {index} out of range for a network of {n} stations")]
    StationIndex { index: usize, n: usize },
    #[error("unknown station id {0:?}")]
    UnknownStation(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("{0} is undefined at a station position")]
    AtStation(&'static str),
    #[error("path-loss exponent {0} is not supported here: an even positive integer is required")]
    UnsupportedAlpha(f64),
    #[error("degenerate segment: endpoints coincide")]
    DegenerateSegment,
    #[error("the zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("empty interval: lower bound must be strictly below the upper bound")]
    EmptyInterval,
    #[error("invalid transform: {0}")]
    InvalidTransform(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unbounded region: {0}")]
    Unbounded(String),
    #[error("infeasible construction: {0}")]
    Infeasible(String),
    #[error("grid of {cells} cells exceeds the limit of {limit}")]
    GridTooLarge { cells: u128, limit: u64 },
    #[error("malformed qds data: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
