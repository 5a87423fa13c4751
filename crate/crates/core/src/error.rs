use thiserror::Error;

/// Errors raised by graph construction, evaluation and simulation.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertices must be distinct (got {0} twice)")]
    RepeatedVertex(usize),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("{n} qubits exceeds the configured maximum of {max}")]
    TooManyQubits { n: usize, max: usize },

    #[error("grids do not match: {0}")]
    GridMismatch(String),

    #[error("bad result file: {0}")]
    Format(String),

    #[error("I/O error: {0}")]
    Io(String),

    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Failures while reading a graph document.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("malformed graph document: {0}")]
    Syntax(String),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("missing weight: {0}")]
    MissingWeight(String),

    #[error("edge ({j}, {k}) references a vertex outside 0..{n}")]
    EdgeOutOfRange { j: usize, k: usize, n: usize },

    #[error("expected {expected} vertex weights, found {found}")]
    WeightCount { expected: usize, found: usize },

    #[error("non-finite weight: {0}")]
    NonFinite(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
