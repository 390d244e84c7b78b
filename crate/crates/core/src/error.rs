use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size mismatch: expected {expected}, got {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("point {point} out of range 1..={size}")]
    PointOutOfRange { point: String, size: String },

    #[error("point {0} appears more than once")]
    RepeatedPoint(usize),

    #[error("not a bijection: {0}")]
    NotBijective(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("parse error at line {line}: {message}")]
    ParseLine { line: usize, message: String },

    #[error("group closure exceeded {limit} elements")]
    ClosureLimit { limit: usize },

    #[error("inconsistent cycle type: lengths sum to {sum}, expected {size}")]
    InconsistentCycleType { size: usize, sum: usize },

    #[error("derived gamma_{y} is not bijective; the sigma family admits no non-degenerate involutive completion")]
    GammaNotBijective { y: usize },

    #[error("supplied gamma_{y} disagrees with the gamma derived from the sigma family")]
    GammaMismatch { y: usize },

    #[error("induced map on the retraction is ill-defined at ({x}, {y})")]
    RetractIllDefined { x: usize, y: usize },

    #[error("invalid frozen-word length {m}: must be 2 or the class ({class})")]
    InvalidFrozenLength { m: usize, class: String },

    #[error("{what} needs n <= {limit}, got {n}")]
    TooLarge { what: &'static str, n: usize, limit: usize },

    #[error("solution is not a verified non-degenerate involutive braided solution: {0}")]
    NotASolution(String),

    #[error("{size} points exceed the materialization bound of {bound}; use lazy evaluation")]
    MaterializationBound { size: String, bound: usize },

    #[error("tree depth {k} exceeds the configured limit {limit}")]
    DepthLimit { k: u32, limit: u32 },

    #[error("unsupported character {0:?} in text message")]
    UnsupportedChar(char),

    #[error("block {block} out of range 0..={max}")]
    BlockOutOfRange { block: String, max: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
