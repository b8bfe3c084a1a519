use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("{n} vertices exceeds the supported maximum of {max}")]
    TooManyVertices { n: usize, max: usize },

    #[error("uniformity must be at least 1, got {0}")]
    InvalidUniformity(usize),

    #[error("expected a set of {expected} distinct vertices, got {got:?}")]
    Arity { expected: usize, got: Vec<usize> },

    #[error("uniformity mismatch: {left} vs {right}")]
    UniformityMismatch { left: usize, right: usize },

    #[error("shadow level {level} out of range 1..={max}")]
    LevelOutOfRange { level: usize, max: usize },

    #[error("triangle index {i} out of range 1..={max} for r = {r}")]
    IndexOutOfRange { r: usize, i: usize, max: usize },

    #[error("size vector has length {got}, graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },

    #[error("weight vector has dimension {got}, graph has {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid simplex vector: {0}")]
    InvalidWeights(String),

    #[error("normalizer beta = r!·P(x) is zero; the ordered edge distribution is undefined")]
    ZeroNormalizer,

    #[error("optimum is not certified: {0}")]
    Uncertified(String),

    #[error("scale guard: {0}")]
    ScaleGuard(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown pattern `{0}` (expected delta, cfam, tfam, weak or t:<r>:<i>)")]
    UnknownPattern(String),
}
