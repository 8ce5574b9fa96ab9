use thiserror::Error;

use crate::graph::Edge;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("edge ({}, {}) is not in the graph", .0.0, .0.1)]
    EdgeNotFound(Edge),

    #[error("graph has no edges")]
    EmptyEdgeSet,

    #[error("operation requires an {expected} graph")]
    Directedness { expected: &'static str },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),

    #[error("graph is not connected")]
    Disconnected,

    #[error("assortativity is undefined (zero excess-degree variance)")]
    UndefinedAssortativity,

    #[error("rewiring budget of {attempts} attempts exhausted with no accepted swap")]
    BudgetExhausted { attempts: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
