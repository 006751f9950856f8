use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot parse rational {0:?}")]
    ParseRational(String),
    #[error("cannot parse divisor {0:?}: {1}")]
    ParseDivisor(String, String),
    #[error("divisor must have at least one component")]
    EmptyDivisor,
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("generator {index} has degree {degree}, expected 0")]
    NonZeroDegreeGenerator { index: usize, degree: String },
    #[error("subgroup needs at least one generator")]
    EmptyGenerators,
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is disconnected")]
    DisconnectedGraph,
    #[error("too many vertices for permutation construction: {0} > {max}", max = crate::graph::MAX_PERMUTATION_VERTICES)]
    TooManyVertices(usize),
    #[error("base vertex {vertex} out of range 1..={n}")]
    BaseVertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("SVG output requires n = 2, got n = {0}")]
    SvgDimension(usize),
    #[error("json: {0}")]
    Json(String),
    #[error("csv: {0}")]
    Csv(String),
    #[error("unknown example {0:?}")]
    UnknownExample(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
