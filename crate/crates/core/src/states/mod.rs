//! Haar state, the two circle characters, their conditional expectations
//! and the Pimsner–Popa obstruction probes.

mod expectation;
mod haar;
mod laurent;
mod watatani;

pub use expectation::{
    character, expectation, expectation_closed_form, expectation_via_coproduct, Which,
};
pub use haar::{haar, haar_monomial, haar_numeric, HaarEstimate};
pub use laurent::LaurentPoly;
pub use watatani::{probe_element, probe_vector, watatani_probe, watatani_probe_on, ProbeReport};
