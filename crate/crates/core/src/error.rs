use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("malformed graph6: {0}")]
    Graph6(String),

    #[error("empty graph has no spectral radius")]
    EmptyGraph,

    #[error("graph is disconnected")]
    Disconnected,

    #[error(
        "power iteration did not converge after {iterations} iterations \
         (best estimate {estimate}, residual {residual})"
    )]
    NotConverged {
        estimate: f64,
        residual: f64,
        iterations: usize,
    },

    #[error("partition is not equitable: vertices {u} and {v} of block {block} differ in neighbours inside block {towards}")]
    NotEquitable {
        u: usize,
        v: usize,
        block: usize,
        towards: usize,
    },

    #[error("no sign change of the polynomial in (0, {0}]")]
    NoRootInBracket(f64),

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("search budget exceeded after {0} node expansions")]
    BudgetExceeded(u64),

    #[error("line {line}: {message}")]
    StreamLine { line: usize, message: String },

    #[error("no graphs in stream")]
    NoGraphs,

    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
