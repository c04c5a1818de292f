use thiserror::Error;

/// Errors raised while building or evaluating previsions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a partition needs at least one atom")]
    EmptyPartition,
    #[error("duplicate atom label `{0}`")]
    DuplicateAtom(String),
    #[error("partition has {size} atoms but the configured limit is {limit}")]
    TooManyAtoms { size: usize, limit: usize },
    #[error("unknown atom `{0}`")]
    UnknownAtom(String),
    #[error("atom index {0} is out of range")]
    AtomOutOfRange(usize),
    #[error("the conditioning event is empty")]
    EmptyEvent,
    #[error("operands are defined on different partitions")]
    PartitionMismatch,
    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("conflicting assessments for {gamble}: {first} and {second}")]
    ConflictingEntry {
        gamble: String,
        first: String,
        second: String,
    },
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("missing assessed entries: {}", .0.join(", "))]
    MissingEntries(Vec<String>),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
