use thiserror::Error;

/// Errors raised by element arithmetic, subgroup enumeration and pattern analysis.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("depth {depth} is out of range (expected 1..={max})")]
    InvalidDepth { depth: usize, max: usize },

    #[error("generator index {index} is out of range for depth {depth}")]
    GeneratorOutOfRange { index: usize, depth: usize },

    #[error("depth mismatch: {left} vs {right}")]
    DepthMismatch { left: usize, right: usize },

    #[error("word of length {len} does not fit depth {depth}")]
    WordTooLong { len: usize, depth: usize },

    #[error("level {level} is out of range for depth {depth}")]
    LevelOutOfRange { level: usize, depth: usize },

    #[error("invalid word {0:?}: expected a string over {{0,1}}")]
    InvalidWord(String),

    #[error("invalid portrait encoding: {0}")]
    BadEncoding(String),

    #[error("level set must be nonempty")]
    EmptyLevelSet,

    #[error("vertex set must be nonempty")]
    EmptyVertexSet,

    #[error("vertex {vertex} is not on level {level}")]
    VertexNotOnLevel { vertex: String, level: usize },

    #[error("enumeration cap of {cap} elements exceeded{hint}")]
    CapExceeded { cap: u64, hint: String },

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("pattern group is not essential; reduce it first")]
    NotEssential,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn cap(cap: u64) -> Self {
        Error::CapExceeded {
            cap,
            hint: String::new(),
        }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
