use thiserror::Error;

use crate::colorings::Witness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
    #[error("coloring is not centered")]
    NotCentered(Witness),
    #[error("coloring is not linear")]
    NotLinear(Witness),
    #[error("graph is not a tree")]
    NotATree,
    #[error("graph is not connected")]
    Disconnected,
    #[error("search budget exceeded after {nodes} nodes")]
    BudgetExceeded { nodes: u64 },
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("assignment does not satisfy the formula (clause {clause} unsatisfied)")]
    Unsatisfying { clause: usize },
}
