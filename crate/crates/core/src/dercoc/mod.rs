//! Degree and skew-centroidal derivations, the graded dual `C = D^gr*`,
//! invariant forms, and the central/affine cocycles of the construction.

mod cocycle;
mod derivation;
mod form;

pub use cocycle::{
    c_add_scaled, c_eval, d_act_on_c, sigma_d, validate_affine_cocycle, AffineCocycle, CElement,
    CocycleViolation,
};
pub use derivation::{
    build_d_algebra, der_bracket, CentroidalDerivation, DAlgebra, DercocError, HomWeight,
    DEFAULT_DEGREE_BOUND,
};
pub use form::form_l;
