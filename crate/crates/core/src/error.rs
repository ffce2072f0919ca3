use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(VertexId, VertexId),
    #[error("non-positive weight on edge {0}-{1}")]
    NonPositiveWeight(VertexId, VertexId),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid contraction: {0}")]
    InvalidContraction(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("graph has no edges to sample")]
    NoEdges,
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("instance too large: n = {n} exceeds the limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("arithmetic overflow in exact weight arithmetic")]
    Overflow,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
