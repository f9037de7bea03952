use thiserror::Error;

/// Errors raised by the library.
///
/// Parse failures are kept apart from domain failures so the CLI can map them
/// onto different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("partition {0} is not strict, so it has no shifted diagram")]
    NonStrictShift(String),
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("filling does not match the diagram: {0}")]
    ShapeMismatch(String),
    #[error("{needed} variables needed, only {given} given")]
    TooFewVariables { needed: usize, given: usize },
    #[error("the empty shape has no degree formula")]
    EmptyShape,
    #[error("no tableaux of shape {shape} with entries at most {n}")]
    EmptyTableauSet { shape: String, n: usize },
    #[error("size {0} is odd")]
    OddSize(usize),
    #[error("size {size} exceeds the supported ceiling {ceiling}")]
    SizeTooLarge { size: usize, ceiling: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("not a fixed-point-free involution: {0}")]
    NotFpfInvolution(String),
    #[error("inexact division: nonzero remainder in divided difference {0}")]
    InternalDivision(String),
    #[error("inconsistent recursion at {0}: two derivation paths disagree")]
    InconsistentRecursion(String),
    #[error("not a valid tableau: {0}")]
    InvalidTableau(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
    #[error("entry value {0} is out of the supported range")]
    ValueOutOfRange(usize),
}

impl Error {
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
