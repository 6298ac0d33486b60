//! Assembly of the extended affine Lie algebra `E = L + C + D`, its root
//! decomposition, core, and the window checks of the defining axioms.

mod axioms;
mod roots;
mod structure;

pub use axioms::{
    check_eala_axioms, classify_ideal, core_compute, sample_ideal_dichotomy, CoreReport,
    EalaReport,
};
pub use roots::{
    classify_roots, root_decomposition, ClassifiedRoots, EalaRoot, RootDecomposition, RootsError,
};
pub use structure::{assemble_eala, sigma_into_e, EalaStructure, Part};
