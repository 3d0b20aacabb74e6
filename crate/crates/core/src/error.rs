use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rank {rank} for type {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("unknown Lie type family `{0}` (expected A, D or E)")]
    UnknownFamily(String),
    #[error("vertex {vertex} out of range 1..={rank}")]
    VertexOutOfRange { vertex: usize, rank: usize },
    #[error("({vertex}, {p}) violates the parity condition p - eps_i even")]
    ParityMismatch { vertex: usize, p: i64 },
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid height function: {0}")]
    InvalidHeight(String),
    #[error("truncation order must be at least {needed}, got {got}")]
    TableTooShort { needed: usize, got: usize },
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("{0:?} is not a positive root")]
    NotPositiveRoot(Vec<i64>),
    #[error("vertex {0} is neither a sink nor a source")]
    NotSinkOrSource(usize),
    #[error("expected a one-dimensional Ext^1, found dimension {0}")]
    ExtNotOneDimensional(usize),
    #[error("pole order is {0}, expected a simple pole")]
    NotSimplePole(u32),
    #[error("no placement of the pair in a common heart was found")]
    NoCommonHeart,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("decomposition failed: {0}")]
    Decomposition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
