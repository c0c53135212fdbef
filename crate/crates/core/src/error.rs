use thiserror::Error;

use crate::exact::Domain;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("domain mismatch: {0} vs {1}")]
    DomainMismatch(Domain, Domain),
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("empty matrix")]
    EmptyMatrix,
    #[error("ragged rows: expected {expected} columns, found {found}")]
    Ragged { expected: usize, found: usize },
    #[error(
        "arity mismatch: polynomial has {vars} variables but {forms} substitution forms were given"
    )]
    Arity { vars: usize, forms: usize },
    #[error("substitution forms must be homogeneous of one common degree")]
    InhomogeneousSubstitution,
    #[error("shape mismatch: {0}")]
    Shape(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("point is the zero vector")]
    ZeroVector,
    #[error("parameter {0} is the base point of the linear system")]
    BasePoint(String),
    #[error("degenerate sample after {attempts} attempts (prime {prime}, seed {seed})")]
    DegenerateSample {
        prime: u64,
        seed: u64,
        attempts: u32,
    },
    #[error("projection centre has rank {0}, expected 3")]
    CentreRank(usize),
    #[error("prime {0} is outside the supported range for this operation")]
    PrimeOutOfRange(u64),
    #[error("class {a}l - {b}E is outside the supported range")]
    UnsupportedClass { a: i64, b: i64 },
    #[error("duplicate point in input")]
    DuplicatePoint,
    #[error("non-generic instance: {0}")]
    NonGeneric(String),
    #[error("input vectors are proportional")]
    Proportional,
    #[error("search space too large: {0}")]
    SearchTooLarge(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(i64, i64),
    #[error("components {0} and {1} meet negatively, not a nodal configuration")]
    NegativeIntersection(usize, usize),
    #[error("repeated component {0}")]
    RepeatedComponent(usize),
    #[error("quadratic part is not negative definite, search region is unbounded")]
    NotDefinite,
    #[error("formula does not produce an integer: {0}/2")]
    NonInteger(i64),
    #[error("no integer solution: {0}")]
    NoSolution(String),
}
