use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("modulus {0} outside (0,1); replace q by 1/q or conj(q) first, these give isomorphic quantum groups")]
    ModulusOutOfRange(f64),
    #[error("theta must be finite, got {0}")]
    NonFiniteTheta(f64),
    #[error("coefficient overflow while multiplying {0}")]
    CoefficientOverflow(String),
    #[error("rewriting did not terminate within {0} steps")]
    RewriteLimit(usize),
    #[error("rewrite measure failed to decrease at step {0}")]
    RewriteMeasure(usize),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("operator grids differ")]
    GridMismatch,
    #[error("torus point has non-unit modulus {0}")]
    NonUnitary(f64),
    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),
    #[error("problem size {size} exceeds cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("routes disagree for {what}: discrepancy {discrepancy:e}")]
    RouteMismatch { what: String, discrepancy: f64 },
    #[error("invalid projection spec: {0}")]
    InvalidProjection(String),
    #[error("projection not idempotent enough: defect {0:e}")]
    NotIdempotent(f64),
    #[error("chern number {value} is {distance:e} away from an integer")]
    NonIntegral { value: f64, distance: f64 },
    #[error("index indeterminate: {0}")]
    Indeterminate(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("linear algebra failure: {0}")]
    LinearAlgebra(String),
}

pub type Result<T> = std::result::Result<T, Error>;
