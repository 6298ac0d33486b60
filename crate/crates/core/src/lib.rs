//! Exact construction and window verification of multiloop Lie tori and
//! extended affine Lie algebras.
//!
//! The crate is organized bottom-up:
//!
//! - [`exactnum`]: arithmetic in cyclotomic fields `Q(zeta_m)` and exact
//!   sparse linear algebra (kernels, eigenprojectors, Smith normal form);
//! - [`rootsys`]: finite irreducible root systems, Chevalley bases with
//!   deterministic structure constants and finite-order automorphisms;
//! - [`glie`]: generic machinery for `Z^n`-graded Lie algebras with finitely
//!   supported elements (brackets, windows, centralizers, ideal closures);
//! - [`multiloop`]: the twisted loop construction `L(g, sigma)` together with
//!   the Lie-torus axiom checker and Galois-descent view;
//! - [`dercoc`]: degree and skew-centroidal derivations, graded duals,
//!   invariant forms and the central/affine cocycles;
//! - [`eala`]: assembly of `E = L + C + D`, root decomposition and the
//!   EALA axiom checker;
//! - [`autmorph`]: structured automorphisms (elementary exponentials, kernel
//!   maps, grading-preserving lifts, Galois elements) and the constructive
//!   Cartan conjugacy algorithm.
//!
//! All arithmetic is exact; every verification is performed on a finite
//! degree window and reported as such. The crate is `no_std` (with `alloc`).

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod autmorph;
pub mod dercoc;
pub mod eala;
pub mod exactnum;
pub mod glie;
pub mod multiloop;
pub mod rootsys;
pub mod sampling;

pub use exactnum::Scalar;
pub use glie::{Degree, GradedElement, Window};
