use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("malformed polygon file, line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("start point is not strictly inside the kernel of the polygon")]
    NotInKernel,
    #[error("start point lies within tolerance of the polygon boundary")]
    DegenerateInput,
    #[error("radius {x} outside candidate interval [{lo}, {hi}]")]
    OutOfInterval { x: f64, lo: f64, hi: f64 },
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("spiral never left the polygon")]
    NoExit,
    #[error("scene has no drawables")]
    EmptyScene,
    #[error("candidate pair crosses more than {limit} times on one cell")]
    EnvelopeComplexity { limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
