use thiserror::Error;

/// Errors raised by the library.
///
/// Every variant is a domain error: the CLI maps all of them to exit code 3.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid embedding: {0}")]
    EmbeddingInvalid(String),
    #[error("no orientation with the prescribed outdegrees exists: {0}")]
    Infeasible(String),
    #[error("cycle {0} is not directed in this orientation")]
    NotDirected(usize),
    #[error("state space exceeds the configured cap of {0} states")]
    CapExceeded(usize),
    #[error("chain kind {0} is not monotone; coupling from the past refused")]
    NonMonotoneKind(String),
    #[error("tower is not valid for this orientation")]
    InvalidTower,
    #[error("coloring propagation got stuck: {0}")]
    PropagationStuck(String),
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("chain is not ergodic")]
    NotErgodic,
    #[error("mixing time not reached within {0} steps")]
    NoConvergence(usize),
    #[error("hour-glass partition leaks: transition from state {0} to state {1}")]
    PartitionLeak(usize, usize),
    #[error("state space of {0} states is too large for an exhaustive cut scan")]
    TooLarge(usize),
    #[error("the subgraph reachable from the source contains a directed cycle")]
    CyclicSubgraph,
    #[error("face {0} is not a quadrilateral")]
    NotQuadrilateral(usize),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
