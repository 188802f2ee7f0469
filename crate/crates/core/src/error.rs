use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("index {index} out of range 0..{bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("double factorial undefined for {0}")]
    NegativeDoubleFactorial(i64),

    #[error("edge subset is not Eulerian (vertex {vertex} has odd degree)")]
    NotEulerian { vertex: usize },

    #[error("invalid Eulerian state: {0}")]
    InvalidState(String),

    #[error("invalid fragment: {0}")]
    InvalidFragment(String),

    #[error("fragments have different numbers of labels ({0} vs {1})")]
    LabelCountMismatch(usize, usize),

    #[error("graph has {0} edges; at most 64 are supported")]
    TooManyEdges(usize),

    #[error("vertex {vertex} has degree {degree}, above the model's degree cap {cap}")]
    DegreeCapExceeded {
        vertex: usize,
        degree: usize,
        cap: usize,
    },

    #[error("model/mode mismatch: {0}")]
    ModeMismatch(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("directed matchings live on different ground sets")]
    GroundSetMismatch,

    #[error("not a directed perfect matching: {0}")]
    InvalidMatching(String),

    #[error("graph contains a circle component, which is not allowed here")]
    CircleNotAllowed,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("cannot parse scalar {0:?}")]
    ParseScalar(String),

    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
