use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("level mismatch: {left} vs {right}")]
    LevelMismatch { left: u8, right: u8 },

    #[error("coefficient vector of length {len} does not match level {level} (expected {expected})")]
    BadLength { level: u8, len: usize, expected: usize },

    #[error("level {0} is outside the supported range")]
    UnsupportedLevel(u8),

    #[error("inverse of zero")]
    ZeroInverse,

    #[error("vector is not tangent: <w, x> = {0:e}")]
    NotTangent(f64),

    #[error("point is not on the unit sphere: |x| = {0}")]
    NotUnit(f64),

    #[error("degenerate chart at {u:?}: smallest singular value {sigma_min:e}")]
    DegenerateChart { u: Vec<f64>, sigma_min: f64 },

    #[error("stencil leaves the chart domain in parameter {param} at u = {value}")]
    StencilOutOfDomain { param: usize, value: f64 },

    #[error("chart has dimension {found}, expected {expected}")]
    ChartDimension { expected: usize, found: usize },

    #[error("normal orientation is ambiguous: |<normal, reference>| = {0:e}")]
    AmbiguousNormal(f64),

    #[error("point too close to the singular set: a0^2 + a1^2 = {value:e} < {delta}")]
    SingularSet { value: f64, delta: f64 },

    #[error("zero vector field")]
    ZeroField,

    #[error("orthant normals are linearly dependent (smallest singular value {0:e})")]
    DependentNormals(f64),

    #[error("empty sample set")]
    EmptySamples,

    #[error("malformed simplicial complex: {0}")]
    MalformedComplex(String),

    #[error("invalid stencil: {0}")]
    InvalidStencil(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unknown chart `{0}`")]
    UnknownChart(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("lift is not invariant under the Hopf action: {0}")]
    NotHopfInvariant(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
