use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not a tree: {0}")]
    NotATree(String),
    #[error("invalid boundary configuration: {0}")]
    InvalidBoundary(String),
    #[error("every vertex carries a Dirichlet condition; the interior subgraph is empty")]
    EmptyInterior,
    #[error("the zero polynomial cannot be normalized")]
    ZeroPolynomial,
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("root refinement did not converge near x = {x}")]
    ConvergenceFailure { x: f64 },
    #[error("ambiguous branch clustering: {0}")]
    ClusterAmbiguity(String),
    #[error("ambiguous input: {0}")]
    AmbiguousInput(String),
    #[error("parse error: {0}")]
    Parse(String),
}
