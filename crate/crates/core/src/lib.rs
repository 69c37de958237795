//! Symbolic and numerical probes for the compact quantum group U_q(2).

pub mod commutant;
pub mod dirac;
pub mod error;
pub mod hopf;
pub mod linalg;
pub mod ncindex;
pub mod rep;
pub mod states;

pub use error::{Error, Result};
pub use hopf::{AlgebraElement, BasisMonomial, QParam, TensorElement};
pub use num_complex::Complex64;
pub use rep::{GeneratorSet, SparseOperator, TruncGrid};
