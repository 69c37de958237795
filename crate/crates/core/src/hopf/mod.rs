//! The Hopf ⋆-algebra of polynomial functions on U_q(2) in the PBW basis.
//!
//! Normal order is `a^n b^m (b*)^k D^l`. The rewrite table in
//! `docs/relations.md` lists every rule used, including the ones obtained
//! from the defining relations by taking adjoints and inverses.

mod axioms;
mod element;
mod qparam;
pub mod rewrite;
mod structure;
mod tensor;

pub use axioms::{axiom_residuals, hopf_suite, AxiomResiduals, HopfSuiteReport};
pub use element::{monomial_product, multiply, power, star, AlgebraElement, BasisMonomial, PRUNE};
pub use qparam::{cis_pi, QParam, QWarning, RATIONAL_DENOMINATOR_LIMIT};
pub use structure::{
    antipode, antipode_monomial, comultiply, comultiply_monomial, counit, counit_monomial,
    monomials_up_to_degree, random_element, tensor_star, Generator,
};
pub use tensor::{Tensor3, TensorElement};
