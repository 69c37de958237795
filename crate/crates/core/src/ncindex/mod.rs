//! Powers–Rieffel projections in the noncommutative torus generated by two
//! unitaries of the representation, and their index pairing with the phase
//! of the Dirac operator.

mod chern;
mod index;
mod projection;
mod torus;

pub use chern::{
    chern_number, chern_of_modes, round_chern, triple_trace, ChernReport, INTEGRALITY_TOL,
};
pub use index::{embed_slice, fredholm_index_svd, pairing_index, IndexConfig, IndexReport};
pub use projection::{
    modes_operator, rieffel_projection, twisted_product, ProjectionSpec, RampShape,
    RieffelProjection,
};
pub use torus::{build_torus, phase_operator, phase_value, TorusPair};
