use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{function}: argument {value} outside the domain ({expected})")]
    Domain {
        function: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("dimension {requested} exceeds the configured maximum {max}")]
    Resource { requested: usize, max: usize },

    #[error("{routine} did not converge after {iterations} iterations")]
    NoConvergence {
        routine: &'static str,
        iterations: usize,
    },

    #[error("degenerate spectrum: {0}")]
    Degenerate(String),

    #[error("least-squares design matrix is rank deficient (column {column})")]
    RankDeficient { column: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("discarded {discarded} of {samples} samples, above the allowed rate {max_rate}")]
    DiscardRate {
        discarded: u64,
        samples: u64,
        max_rate: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
