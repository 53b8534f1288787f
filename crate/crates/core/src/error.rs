use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid family parameters: {0}")]
    Parameter(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    Validation(String),

    #[error("precondition violated: {0}")]
    Logic(String),

    #[error("cover instance is infeasible: fort {fort_index} cannot reach its required coverage")]
    Infeasible { fort_index: usize },

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("graph is not a tree")]
    NotATree,

    #[error("K_2 is excluded from the tree formula")]
    ExcludedTree,

    #[error("pattern hypothesis violated: {0}")]
    PatternDomain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
