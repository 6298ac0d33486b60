//! Generic engine for `Z^n`-graded Lie algebras with finitely supported
//! elements.
//!
//! Elements are exact finite sums; brackets are always evaluated exactly.
//! Window truncation applies only to search operations (centralizers, ideal
//! closures, axiom checks), never to bracket evaluation itself.

mod element;
mod ops;

pub use element::{Degree, GradedElement, Window, WindowIndex};
pub use ops::{
    bracket, centralizer_at_window, check_element, classify_ideal_with, ideal_closure_at_window,
    jacobi_check, window_basis, ClosureResult, GlieError, IdealClass, JacobiOutcome,
    CLOSURE_ROUND_CAP,
};

use alloc::string::String;

/// Description of a `Z^n`-graded Lie algebra: per-degree basis enumeration
/// plus a bracket rule on basis pairs. Degrees with no basis vectors are
/// simply empty.
pub trait GradedLieAlgebra {
    fn nullity(&self) -> usize;

    fn dim_at(&self, degree: &Degree) -> usize;

    fn slot_label(&self, degree: &Degree, slot: usize) -> String;

    /// Bracket of two basis vectors; the result is supported in the sum
    /// degree.
    fn bracket_basis(&self, d1: &Degree, s1: usize, d2: &Degree, s2: usize) -> GradedElement;
}
