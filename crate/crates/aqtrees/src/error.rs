use crate::graph::Edge;

/// Errors produced across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension must be at least {min}, got {got}")]
    DimensionTooSmall { got: u32, min: u32 },

    #[error("dimension {got} exceeds the configured maximum {max}")]
    DimensionTooLarge { got: u32, max: u32 },

    #[error("graph dimension {graph} does not match decomposition dimension {decomposition}")]
    DimensionMismatch { graph: u32, decomposition: u32 },

    #[error("vertex {value:#b} is out of range for dimension {n}")]
    VertexOutOfRange { value: u32, n: u32 },

    #[error("level {level} must lie in {min}..={max}")]
    LevelOutOfRange { level: u32, min: u32, max: u32 },

    #[error("the two vertices must be distinct")]
    IdenticalVertices,

    #[error("dimension 1 has no copy split")]
    NoSplit,

    #[error("edge {0:?} is not an edge of the graph")]
    ForeignEdge(Edge),

    #[error("vertex {0:#b} is not in the tree")]
    VertexNotInTree(u32),

    #[error("no path: tree does not connect the endpoints")]
    NoTreePath,

    #[error("path endpoints must be distinct")]
    DegeneratePath,

    #[error("failure count {k} exceeds edge count {edges}")]
    TooManyFailures { k: usize, edges: usize },

    #[error("trial count must be at least 1")]
    NoTrials,

    #[error("enumeration budget exceeded: C({edges}, {k}) = {subsets} > {budget}")]
    EnumerationBudget {
        edges: usize,
        k: usize,
        subsets: u64,
        budget: u64,
    },

    #[error("decomposition failed verification: {0}")]
    VerificationFailed(String),

    #[error("invalid document: {0}")]
    InvalidDocument(String),

    #[error("{0}")]
    Usage(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
