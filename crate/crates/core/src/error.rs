use thiserror::Error;

use crate::complex::Simplex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("simplex {0} is not in the complex")]
    SimplexNotInComplex(Simplex),
    #[error("vertex identifier sets are not disjoint (shared vertex {0})")]
    VertexCollision(u32),
    #[error("operation requires a nonempty complex")]
    EmptyComplex,
    #[error("malformed cubical complex: {0}")]
    MalformedCubicalComplex(String),
    #[error("map is not simplicial: image of {0} is not a simplex of the target")]
    NotSimplicial(Simplex),
    #[error("vertex {0} of the source has no image")]
    UnmappedVertex(u32),
    #[error("bad-vertex assignment is not monotone: {smaller} is a face of {larger} but bar({smaller}) is not contained in bar({larger})")]
    MonotonicityViolation { smaller: Simplex, larger: Simplex },
    #[error("bad-vertex assignment is not idempotent at {0}")]
    IdempotenceViolation(Simplex),
    #[error("bad-vertex assignment is invalid at {0}: {1}")]
    InvalidBadAssignment(Simplex, String),
    #[error("{0} is not a bad simplex")]
    NotABadSimplex(Simplex),
    #[error("map is not a complete join")]
    NotCompleteJoin,
    #[error("flow hypothesis ({condition}) violated at {witness}")]
    HypothesisViolation { condition: u8, witness: Simplex },
    #[error("invalid flow data: {0}")]
    InvalidFlowData(String),
    #[error("budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("flow trace starting at {0} did not terminate")]
    NonTermination(Simplex),
    #[error("interior label set has {have} labels, need at least {need}")]
    InsufficientLabels { have: usize, need: usize },
    #[error("complex is not a triangulated {0}-sphere")]
    NotASphere(i32),
    #[error("boundary labeling repeats a label on {0}")]
    ImproperBoundaryLabeling(Simplex),
    #[error("vertex {0} has no label")]
    MissingLabel(u32),
    #[error("unsupported dimension {0}")]
    UnsupportedDimension(i32),
    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),
    #[error("address {0} does not extend any domain leaf")]
    AddressTooShallow(String),
    #[error("invalid tree pair: {0}")]
    InvalidTreePair(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
