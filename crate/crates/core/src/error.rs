use thiserror::Error;

use crate::graph::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} is outside 1..={n}")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("vertex {0} has weight 0; weights must be at least 1")]
    ZeroWeight(usize),

    /// The graph contains an independent set larger than the solver allows.
    #[error("independence number exceeds {bound}: {witness} is independent")]
    IndependenceBound { bound: usize, witness: VertexSet },

    #[error("solver requires unit weights")]
    NonUnitWeights,

    #[error("exhaustive search refused: {n} vertices exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("flow network has an infinite-capacity source-sink path")]
    UnboundedFlow,

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A structural fact that must hold for valid inputs did not; points at a bug upstream.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
