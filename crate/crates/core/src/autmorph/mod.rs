//! Structured automorphisms of the assembled algebra: elementary
//! exponentials, kernel maps, grading-preserving and Galois lifts, the
//! equivariance check over the covering algebra, and the constructive
//! Cartan conjugacy algorithm.

mod conjugacy;
mod lift;
mod rep;

pub use conjugacy::{conjugacy_construct, CartanCandidate, ConjugacyError, ConjugacyOutcome};
pub use lift::{
    derivation_space, elementary_lift_contract, exp_ad, gamma_equivariance_check, gamma_lift,
    kernel_automorphism, lift_grading_preserving, sample_derivation, LiftError,
};
pub use rep::{apply_e, apply_l, core_stable, verify_automorphism, AutomorphismRep, Character, DerMap};
