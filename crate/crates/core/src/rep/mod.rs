//! Truncated realization of the faithful representation on
//! ℓ²(ℕ)⊗ℓ²(ℤ)⊗ℓ²(ℤ).
//!
//! Truncation drops rows that leave the grid, so relations only hold on
//! interior columns.

mod generators;
mod grid;
mod sparse;

pub use generators::{
    build_generators, covariance_residual, generator_action, monomial_operator, relation_residuals,
    torus_unitary, GeneratorSet, RelationResiduals,
};
pub use grid::{Site, TruncGrid};
pub use sparse::{NormEstimate, SparseOperator};
