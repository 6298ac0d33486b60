//! Multiloop algebras `L(g, sigma)`: construction from commuting
//! finite-order automorphisms, Lie torus axiom checks at window scale, root
//! gradings, and the Galois-descent view `L = (g tensor S)^Gamma`.

mod build;
mod descent;
mod grading;
mod torus_check;

pub use build::{build_multiloop, residues, MultiloopAlgebra, MultiloopError};
pub use descent::{
    descent_matches_eigenbasis, gamma_action, gamma_fixed_points, GammaAction,
};
pub use grading::{
    root_grading, weight_candidates, weight_spaces_at, GradingError, RootGrading, Weight,
    WeightForm,
};
pub use torus_check::{check_lie_torus, LieTorusReport, Verdict};

use crate::rootsys::{identity_automorphism, SimpleLieAlgebra};

/// The untwisted algebra `g tensor k[z_1^{+-1}, ..., z_n^{+-1}]` as a
/// multiloop algebra with trivial twists. With the identification `z_i = t_i`
/// this is also the ambient algebra `g tensor S` of a twisted sibling.
pub fn untwisted(base: &SimpleLieAlgebra, nullity: usize) -> MultiloopAlgebra {
    let auts: alloc::vec::Vec<_> = (0..nullity).map(|_| identity_automorphism(base)).collect();
    build_multiloop(base, &auts).expect("identity family always valid")
}
