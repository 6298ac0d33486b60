//! Finite irreducible root systems, Chevalley bases with deterministic
//! structure constants, Killing forms, and finite-order automorphisms in
//! diagram/Kac-coordinate form.

mod algebra;
mod aut;
mod datum;

pub use algebra::{build_simple_algebra, killing_pair, AlgebraError, SimpleLieAlgebra};
pub use aut::{build_automorphism, check_commuting, identity_automorphism, AutError, FiniteOrderAut};
pub use datum::{build_root_system, height, Root, RootDatum, RootError, Series};
