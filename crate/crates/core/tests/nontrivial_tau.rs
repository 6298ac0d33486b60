//! An assembled algebra with a genuinely nonzero affine cocycle.
//!
//! In nullity three, three Witt-type generators in degrees summing to zero
//! commute pairwise, and the cyclic table
//! `tau(w1, w2) = t w3*, tau(w2, w3) = t w1*, tau(w3, w1) = t w2*`
//! satisfies every affine-cocycle law. The assembled algebra must then pass
//! the Jacobi and axiom checks with the `tau`-term active in the product.

use eala_core::dercoc::{build_d_algebra, validate_affine_cocycle, AffineCocycle, CElement, HomWeight};
use eala_core::eala::{assemble_eala, check_eala_axioms, EalaStructure};
use eala_core::glie::{jacobi_check, JacobiOutcome, Window};
use eala_core::multiloop::untwisted;
use eala_core::rootsys::{build_root_system, build_simple_algebra, Series};
use eala_core::sampling::DetRng;
use eala_core::{Degree, Scalar};

fn build() -> EalaStructure {
    let base = build_simple_algebra(&build_root_system(Series::A, 1).unwrap()).unwrap();
    let ml = untwisted(&base, 3);
    let theta = HomWeight::from_ints(&[0, 0, 1]);
    let degrees = [vec![1i64, 0, 0], vec![0, 1, 0], vec![-1, -1, 0]];
    let extra: Vec<(Degree, HomWeight)> =
        degrees.iter().map(|d| (Degree(d.clone()), theta.clone())).collect();
    let da = build_d_algebra(3, &[1, 1, 1], &extra, 4).unwrap();
    assert_eq!(da.dim(), 6);

    let w: Vec<usize> = degrees.iter().map(|d| da.d_indices_at(&Degree(d.clone()))[0]).collect();
    let mut tau = AffineCocycle::zero();
    let pairs = [(w[0], w[1], w[2]), (w[1], w[2], w[0]), (w[2], w[0], w[1])];
    for (a, b, c) in pairs {
        let mut value = CElement::new();
        value.insert(c, Scalar::from_int(5));
        tau.table.insert((a, b), value);
    }
    validate_affine_cocycle(&da, &tau).expect("cyclic table is a valid affine cocycle");
    assemble_eala(ml, da, tau).expect("assembly")
}

#[test]
fn nonzero_tau_appears_in_the_product() {
    let e = build();
    let w1 = Degree(vec![1, 0, 0]);
    let w2 = Degree(vec![0, 1, 0]);
    let d1 = e.da.d_indices_at(&w1)[0];
    let d2 = e.da.d_indices_at(&w2)[0];
    let x = e.embed_d(&[(d1, Scalar::one())]);
    let y = e.embed_d(&[(d2, Scalar::one())]);
    let out = eala_core::glie::bracket(&e, &x, &y);
    // [w1, w2]_D = 0, so the bracket is exactly the cocycle value in C.
    assert!(!out.is_zero());
    let c = e.c_component(&out);
    assert_eq!(c.len(), 1);
    assert_eq!(c.values().next().unwrap(), &Scalar::from_int(5));
    assert!(e.d_component(&out).is_empty());
}

#[test]
fn jacobi_and_axioms_hold_with_nonzero_tau() {
    let e = build();
    let window = Window::new(3, 1);
    let mut rng = DetRng::new(0);
    match jacobi_check(&e, window, 500, &mut rng) {
        JacobiOutcome::Pass { .. } => {}
        JacobiOutcome::Fail { witness, .. } => panic!("jacobi failed: {}", witness),
    }
    let report = check_eala_axioms(&e, window, 10, &mut rng);
    assert!(report.all_pass(), "{:?}", report);
    assert_eq!(report.nullity, 3);
    let core = report.core.expect("core computed");
    assert!(core.matches_l_plus_c && core.radical_is_c);
}

#[test]
fn broken_cyclic_table_is_rejected() {
    let base = build_simple_algebra(&build_root_system(Series::A, 1).unwrap()).unwrap();
    let _ml = untwisted(&base, 3);
    let theta = HomWeight::from_ints(&[0, 0, 1]);
    let degrees = [vec![1i64, 0, 0], vec![0, 1, 0], vec![-1, -1, 0]];
    let extra: Vec<(Degree, HomWeight)> =
        degrees.iter().map(|d| (Degree(d.clone()), theta.clone())).collect();
    let da = build_d_algebra(3, &[1, 1, 1], &extra, 4).unwrap();
    let w: Vec<usize> = degrees.iter().map(|d| da.d_indices_at(&Degree(d.clone()))[0]).collect();
    let mut tau = AffineCocycle::zero();
    // Only one pair set: cyclic symmetry forces the other two.
    let mut value = CElement::new();
    value.insert(w[2], Scalar::from_int(5));
    tau.table.insert((w[0], w[1]), value);
    let err = validate_affine_cocycle(&da, &tau).unwrap_err();
    assert_eq!(err.identity, "cyclic symmetry");
}
