use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {0} is not in the graph")]
    UnknownVertex(usize),

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("{what} = {value} is outside {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: i64,
        min: i64,
        max: i64,
    },

    #[error("invalid (k,d) = ({k},{d}): need k >= 2d >= 2")]
    InvalidRatio { k: u32, d: u32 },

    #[error("({k},{d}) is not reduced: gcd(k,d) != 1")]
    NotReduced { k: u32, d: u32 },

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid vertex name `{0}`")]
    BadName(String),

    #[error("no vertex named `{0}`")]
    UnknownName(String),

    #[error("invalid named graph: {0}")]
    InvalidNamedGraph(String),

    #[error("{what}: size {actual} exceeds guard {limit}")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
