use thiserror::Error;

/// Errors produced by hypergraph construction, file parsing, formula
/// evaluation, and the search routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("uniformity must be at least 2, got k={0}")]
    UniformityTooSmall(usize),

    #[error("vertex count n={n} is smaller than the uniformity k={k}")]
    TooFewVertices { n: usize, k: usize },

    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge {index} has {got} distinct vertices, expected {k}")]
    WrongEdgeSize { index: usize, got: usize, k: usize },

    #[error("blocks do not partition the vertex set: {0}")]
    NotAPartition(String),

    #[error("block {index} is not an edge of the host hypergraph")]
    BlockNotAnEdge { index: usize },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("complement requires n = 2|e|, got n={n} and |e|={len}")]
    ComplementSize { n: usize, len: usize },

    #[error("{what}: {why}")]
    Domain { what: &'static str, why: String },

    #[error("guard violated: {0}")]
    Guard(String),

    #[error("matching count overflowed u64")]
    CountOverflow,

    #[error("edge misses block {block}, so it has no type")]
    TypeMissesBlock { block: usize },

    #[error("the given matching is not the unique perfect matching of the hypergraph")]
    NotUniquePm,

    #[error("invalid search report: {0}")]
    BadReport(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Shorthand for a [`Error::Domain`] violation in the named area.
    pub fn domain(what: &'static str, why: impl Into<String>) -> Self {
        Error::Domain {
            what,
            why: why.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
