use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid lattice dimension: L must be at least 1 (got {0})")]
    InvalidDimension(usize),

    #[error("dimension mismatch: {what} has length {got}, expected {expected}")]
    DimensionMismatch {
        what: &'static str,
        got: usize,
        expected: usize,
    },

    #[error("degenerate statistics: need at least 2 sites, got {0}")]
    DegenerateStatistics(usize),

    #[error("matrix is not symmetric: |H[{row},{col}] - H[{col},{row}]| = {diff:e}")]
    NotSymmetric { row: usize, col: usize, diff: f64 },

    #[error("bit-string weight {weight} does not match sector with {k} excitations")]
    WeightMismatch { weight: u32, k: usize },

    #[error("duplicate position {0} in Walsh-Hadamard index tuple")]
    DuplicatePosition(usize),

    #[error("position {pos} out of range for {n} sites")]
    PositionOutOfRange { pos: usize, n: usize },

    #[error("unsupported perturbative order {0} (only 0, 1 and 2 are implemented)")]
    UnsupportedOrder(u8),

    #[error("at most 3 positions are supported for perturbative Walsh-Hadamard coefficients, got {0}")]
    TooManyPositions(usize),

    #[error("size cap exceeded: {0}")]
    SizeCap(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
