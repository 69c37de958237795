//! Operators commuting with the represented generators, and the center
//! probe.
//!
//! Every entry of [T, π(g)] involves exactly two entries of T because π(g)
//! is a weighted shift. The equations therefore form a graph on the
//! unknowns; each connected component carries at most one free parameter.

mod center;
mod solve;

pub use center::{center_dimension, center_probe, CenterProbe, RANK_THRESHOLD};
pub use solve::{
    commutant_equations, commutant_solve, structure_residuals, CommutantSolution, Equation,
    StructureResidual, DEFAULT_CAP,
};
