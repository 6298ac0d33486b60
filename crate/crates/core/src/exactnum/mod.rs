//! Exact scalar arithmetic over cyclotomic fields and exact sparse linear
//! algebra. Everything downstream builds on this module; there is no
//! floating point anywhere.

mod matrix;
pub(crate) mod poly;
mod projector;
mod scalar;
mod snf;

pub use matrix::{
    rref_in_place, vec_add_scaled, vec_insert, vec_scale, EchelonSpace, RowSpace, Solver,
    SparseMatrix, SparseVec,
};
pub use poly::{totient, Rat};
pub use projector::{image_basis, simultaneous_projector, ProjectorError};
pub use scalar::{NumError, ParseScalarError, Scalar};
pub use snf::{det, generates_full_lattice, lattice_rank, mat_mul, smith_normal_form, IntMatrix, Smith};
