use thiserror::Error;

/// Errors raised by the hypergraph, embedding, solver and entropy layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("uniformity must be at least 1, got {0}")]
    InvalidUniformity(usize),
    #[error("at most {max} vertices are supported, got {n}")]
    TooManyVertices { n: usize, max: usize },
    #[error("edge {edge:?} has {got} vertices, expected {expected}")]
    WrongArity {
        edge: Vec<usize>,
        got: usize,
        expected: usize,
    },
    #[error("edge {edge:?} repeats a vertex")]
    RepeatedVertex { edge: Vec<usize> },
    #[error("vertex {vertex} out of range for a hypergraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),
    #[error("pattern must have at least one edge")]
    EmptyPattern,
    #[error("uniformity mismatch: pattern is {pattern}-uniform, host is {host}-uniform")]
    UniformityMismatch { pattern: usize, host: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("Turán hypergraph needs m >= q >= 1, got m = {m}, q = {q}")]
    InvalidTuranParameters { m: usize, q: usize },
    #[error("vector has dimension {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("invalid weight vector: {0}")]
    InvalidWeightVector(String),
    #[error("alpha = {0} is not supported here (need alpha > 1)")]
    InvalidAlpha(f64),
    #[error("vertices {0} and {1} are not equivalent")]
    NotEquivalent(usize, usize),
    #[error("result is not KKT-certified (residual {0:e})")]
    NotCertified(f64),
    #[error("brute-force oracle limited to {max} free variables, got {got}")]
    TooManyVariables { got: usize, max: usize },
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),
    #[error("polynomial vanishes at the given vector")]
    ZeroPolynomial,
    #[error("not a graph (uniformity {0})")]
    NotAGraph(usize),
    #[error("hypergraph is not {0}-partite")]
    NotPartite(usize),
    #[error("solver did not converge: {0}")]
    NotConverged(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
