use thiserror::Error;

use crate::rootsys::Family;

/// Errors raised across the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported root system {family}{rank}")]
    UnsupportedType { family: Family, rank: usize },
    #[error("vector {0:?} is not a root of the ambient system")]
    NotARoot(Vec<i32>),
    #[error("base vectors are linearly dependent")]
    DependentBase,
    #[error("root set is not a closed root subsystem: {0}")]
    NotClosed(String),
    #[error("ambient mismatch: {0} vs {1}")]
    AmbientMismatch(String, String),
    #[error("invalid Dynkin node {0}")]
    BadNode(usize),
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("invalid parabolic: {0}")]
    InvalidParabolic(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("rank {rank} exceeds bound {bound}")]
    RankBound { rank: usize, bound: usize },
    #[error("subgroups not defined over Z are not enumerated")]
    NotOverZ,
    #[error("search bound exceeded: {0}")]
    SearchBound(String),
    #[error("unsupported oracle configuration: {0}")]
    Unsupported(String),
    #[error("dimension {requested} exceeds Witt index {witt}")]
    WittIndex { requested: usize, witt: usize },
    #[error("generator does not preserve the flag set: {0}")]
    BadEmbedding(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
