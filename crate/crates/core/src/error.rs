use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex {0} is not a terminal")]
    NotTerminal(usize),

    #[error("demand edge ({0}, {1}) is not an edge of the graph")]
    DemandNotInGraph(usize, usize),

    #[error("instance too large for brute force: n={n}, m={m} (limit n<=8, m<=14)")]
    SizeGuard { n: usize, m: usize },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_vertex(v: usize, n: usize) -> Result<()> {
    if v < n {
        Ok(())
    } else {
        Err(Error::VertexOutOfRange { vertex: v, n })
    }
}
