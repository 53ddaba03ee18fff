use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("vertex index {index} out of range 1..={num_vertices}")]
    VertexOutOfRange { index: usize, num_vertices: usize },
    #[error("edge id {0} does not exist")]
    UnknownEdge(usize),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("algebra size mismatch: {0} loops vs {1} loops")]
    SizeMismatch(usize, usize),
    #[error("loop index {index} out of range 1..={n}")]
    LoopOutOfRange { index: usize, n: usize },
    #[error("no critical temperature: spectral radius is zero")]
    NoCriticalTemperature,
    #[error("weights are not a probability vector: {0}")]
    NotProbability(String),
    #[error("e^beta is not exactly representable for beta = {0}")]
    InexactTemperature(String),
    #[error("the KMS functional on the loops algebra is only defined at beta = 0")]
    NonzeroBeta,
    #[error("gauge parameter is not unimodular")]
    NotUnimodular,
    #[error("outside symmetry theorem hypothesis: weight {value} at vertex {vertex} is not strictly positive")]
    NonPositiveWeight { vertex: usize, value: String },
    #[error("inconsistent grouping: weights at vertices {0} and {1} are chained within tolerance but differ by more than it")]
    InconsistentGrouping(usize, usize),
    #[error("n = {n} out of range 1..={cap}")]
    OutOfRange { n: usize, cap: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("element degree {degree} exceeds cap {cap}")]
    DegreeTooLarge { degree: u32, cap: u32 },
    #[error("weights do not match the representation: {0}")]
    PartitionMismatch(String),
    #[error("classical points are incompatible: {0}")]
    IncompatiblePoints(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
}

pub type Result<T> = std::result::Result<T, Error>;
