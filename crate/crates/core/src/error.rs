use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, got {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("not a permutation: {0}")]
    NotAPermutation(String),
    #[error("a permutation group needs at least one generator")]
    NoGenerators,
    #[error("group is not transitive")]
    NotTransitive,
    #[error("group is not primitive")]
    NotPrimitive,
    #[error("transformation is a permutation")]
    IsPermutation,
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("graph is null")]
    NullGraph,
    #[error("graph is not regular")]
    NotRegular,
    #[error("connection set contains the zero vector")]
    ZeroInConnectionSet,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("2 is not a primitive root modulo {0}")]
    BadPrime(u64),
    #[error("construction too large: {0}")]
    TooLarge(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("orbit budget of {0} set images exceeded")]
    OrbitBudgetExceeded(usize),
    #[error("Latin square orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("invalid Latin square: {0}")]
    InvalidLatinSquare(String),
    #[error("colouring is not valid: {0}")]
    ColouringInvalid(String),
    #[error("homomorphism is not valid: {0}")]
    HomomorphismInvalid(String),
    #[error("strongly regular parameters are trivial (need mu > 0 and k > mu)")]
    TrivialSrg,
    /// `best` carries the best bound found before the deadline, when the search has one.
    #[error("search time budget exceeded (best so far: {best:?})")]
    TimeBudgetExceeded { best: Option<usize> },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
