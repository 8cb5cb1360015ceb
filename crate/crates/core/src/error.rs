use thiserror::Error;

/// Errors produced by circuit construction, routing, and simulation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid wire spec: {0}")]
    InvalidSpec(String),

    #[error("gate validation failed: {0}")]
    Validation(String),

    #[error("circuit contains an opaque block and cannot be inverted")]
    NonInvertible,

    #[error("negated-sum gate touched a promoted level: {0}")]
    OutOfSubspace(String),

    #[error("no path between physical qudits {0} and {1}")]
    NoPath(usize, usize),

    #[error("routing contract violated: {0}")]
    RoutingContract(String),

    #[error("gate kind not supported by the ladder strategy: {0}")]
    UnsupportedGate(String),

    #[error("state space too large: {dim} amplitudes exceeds cap {cap}")]
    TooLarge { dim: usize, cap: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid range: {0}")]
    InvalidRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
