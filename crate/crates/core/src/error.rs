use thiserror::Error;

/// Errors raised by graph construction, codecs, transforms and checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("edge {{{0}, {1}}} is not present")]
    MissingEdge(usize, usize),

    #[error("graph order {order} exceeds the limit of {limit}")]
    TooLarge { order: usize, limit: usize },

    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },

    #[error("vertex set does not induce a chordless cycle")]
    NotACycle,

    #[error("invalid contraction site: {0}")]
    InvalidSite(String),

    #[error("invalid sun specification: {0}")]
    InvalidSun(String),

    #[error("input graph is not a tree")]
    NotATree,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("size {size} exceeds the family cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
