//! A nullity-two loop algebra twisted by two commuting order-three torus
//! automorphisms. The eigenprojectors, brackets, Galois matrices, and forms
//! all carry genuine cube-root-of-unity scalars here, so this pins the
//! cyclotomic arithmetic end to end. The grading is not a Lie torus (no
//! root vectors live in degree zero), but the assembled algebra is still a
//! Lie algebra with an invariant form, and the descent identities hold.

use eala_core::dercoc::{build_d_algebra, form_l, AffineCocycle};
use eala_core::eala::assemble_eala;
use eala_core::exactnum::SparseMatrix;
use eala_core::glie::{
    bracket, jacobi_check, GradedLieAlgebra, JacobiOutcome, Window, WindowIndex,
};
use eala_core::multiloop::{
    build_multiloop, descent_matches_eigenbasis, gamma_action, MultiloopAlgebra,
};
use eala_core::rootsys::{build_automorphism, build_root_system, build_simple_algebra, Series};
use eala_core::sampling::DetRng;
use eala_core::Degree;

fn twisted() -> MultiloopAlgebra {
    let base = build_simple_algebra(&build_root_system(Series::A, 2).unwrap()).unwrap();
    let s1 = build_automorphism(&base, &[0, 1], &[1, 0], 3).unwrap();
    let s2 = build_automorphism(&base, &[0, 1], &[0, 1], 3).unwrap();
    build_multiloop(&base, &[s1, s2]).unwrap()
}

#[test]
fn residue_dimensions_partition_the_base() {
    let ml = twisted();
    assert_eq!(ml.orders, vec![3, 3]);
    // The Cartan sits at residue (0,0); each root vector occupies the
    // residue class of its root coefficients mod 3.
    assert_eq!(ml.dim_residue(&[0, 0]), 2);
    for (residue, expect) in [
        ([1i64, 0], 1),
        ([0, 1], 1),
        ([1, 1], 1),
        ([2, 0], 1),
        ([0, 2], 1),
        ([2, 2], 1),
        ([1, 2], 0),
        ([2, 1], 0),
    ] {
        assert_eq!(ml.dim_residue(&residue), expect, "residue {:?}", residue);
    }
}

#[test]
fn jacobi_descent_and_pairings_with_cube_roots() {
    let ml = twisted();
    let window = Window::new(2, 2);
    let mut rng = DetRng::new(0);
    match jacobi_check(&ml, window, 400, &mut rng) {
        JacobiOutcome::Pass { .. } => {}
        JacobiOutcome::Fail { witness, .. } => panic!("jacobi failed: {}", witness),
    }
    // Galois fixed points recover the eigenspaces; the group matrices have
    // entries in Q(zeta_3).
    assert!(descent_matches_eigenbasis(&ml, window).is_ok());
    let ga = gamma_action(&ml);
    assert_eq!(ga.elements().len(), 9);
    // Nondegenerate pairing of opposite window degrees.
    for deg in window.degrees() {
        let d = ml.dim_at(&deg);
        if d == 0 {
            continue;
        }
        let mut gram = SparseMatrix::new(d, d);
        for i in 0..d {
            let x = ml.element_from_base(&deg, &ml.slot_vector(&deg, i).clone());
            for j in 0..ml.dim_at(&deg.neg()) {
                let y = ml.element_from_base(&deg.neg(), &ml.slot_vector(&deg.neg(), j).clone());
                gram.set(i, j, form_l(&ml, &x, &y));
            }
        }
        assert_eq!(gram.rank(), d, "degenerate pairing at {}", deg);
    }
}

#[test]
fn assembled_extension_is_a_lie_algebra() {
    let ml = twisted();
    let da = build_d_algebra(2, &[3, 3], &[], 4).unwrap();
    let e = assemble_eala(ml, da, AffineCocycle::zero()).unwrap();
    let window = Window::new(2, 2);
    let mut rng = DetRng::new(1);
    match jacobi_check(&e, window, 400, &mut rng) {
        JacobiOutcome::Pass { .. } => {}
        JacobiOutcome::Fail { witness, .. } => panic!("jacobi failed on E: {}", witness),
    }
    // Invariance of the assembled form on sampled triples.
    let idx = WindowIndex::new(&e, window);
    for _ in 0..150 {
        let x = idx.basis_element(rng.below(idx.len()));
        let y = idx.basis_element(rng.below(idx.len()));
        let z = idx.basis_element(rng.below(idx.len()));
        let lhs = e.form(&bracket(&e, &x, &y), &z);
        let rhs = e.form(&x, &bracket(&e, &y, &z));
        assert_eq!(lhs, rhs);
    }
    // The degree bookkeeping respects the twist: brackets of opposite
    // residues land in the centroid degrees.
    let d1 = Degree(vec![1, 0]);
    let d2 = Degree(vec![-1, 0]);
    let x = idx.basis_element(idx.position(&d1, 0).unwrap());
    let y = idx.basis_element(idx.position(&d2, 0).unwrap());
    let out = bracket(&e, &x, &y);
    for ((d, _), _) in &out.terms {
        assert_eq!(*d, Degree(vec![0, 0]));
    }
}
