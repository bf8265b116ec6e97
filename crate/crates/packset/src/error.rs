use crate::rat::QVector;
use thiserror::Error;

/// A point of the input set together with a smaller nonnegative point
/// outside it; proof that the set is not downward closed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DownsetWitness {
    /// A point inside the polyhedron.
    pub inside: QVector,
    /// A point `<= inside`, nonnegative, outside the polyhedron.
    pub below: QVector,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("dimension {dim} exceeds cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },
    #[error("enumeration budget exceeded: {need} > {budget} {what}")]
    BudgetExceeded {
        what: &'static str,
        need: u128,
        budget: u64,
    },
    #[error("operation undefined on the empty set")]
    EmptySet,
    #[error("polyhedron is empty")]
    EmptyPolyhedron,
    #[error("generator description needs at least one vertex")]
    NoVertices,
    #[error("sequence is empty")]
    EmptySequence,
    #[error("sequence is not decreasing at position {0}")]
    NotDecreasing(usize),
    #[error("slicing needs dimension at least 2")]
    SliceTooSmall,
    #[error("knapsack coefficients must be nonnegative")]
    NegativeCoefficient,
    #[error("direction has negative entries; take the positive part first")]
    NegativeDirection,
    #[error("polyhedron must impose x >= 0")]
    MissingNonneg,
    #[error("unbounded in the given direction; no finite support")]
    NotValidDirection,
    #[error("not a downset: {0:?} is inside but {1:?} below it is not", .witness.inside, .witness.below)]
    NotADownset { witness: DownsetWitness },
}

pub type Result<T> = std::result::Result<T, Error>;
