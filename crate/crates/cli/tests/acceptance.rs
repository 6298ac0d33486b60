//! Acceptance suite: one test per criterion, each printing a pass line.
//! Every check is exact; there are no tolerances anywhere. Run with
//! `cargo test -p eala-cli --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use std::path::PathBuf;
use std::time::Instant;

use eala_cli::load_manifest;
use eala_cli::manifest::{build_eala, build_loop};
use eala_core::autmorph::{
    apply_e, conjugacy_construct, derivation_space, elementary_lift_contract,
    gamma_equivariance_check, kernel_automorphism, sample_derivation, verify_automorphism,
    CartanCandidate, ConjugacyError, DerMap,
};
use eala_core::dercoc::CElement;
use eala_core::eala::{classify_roots, core_compute, root_decomposition, sample_ideal_dichotomy};
use eala_core::exactnum::lattice_rank;
use eala_core::glie::{jacobi_check, GradedLieAlgebra, JacobiOutcome, Window, WindowIndex};
use eala_core::multiloop::{check_lie_torus, descent_matches_eigenbasis, root_grading, untwisted};
use eala_core::rootsys::Series;
use eala_core::sampling::DetRng;
use eala_core::{Degree, GradedElement, Scalar};

fn manifest_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("manifests").join(name)
}

fn eala_from(name: &str) -> eala_core::eala::EalaStructure {
    let (m, _) = load_manifest(&manifest_path(name)).expect("manifest loads");
    build_eala(&m).expect("manifest builds")
}

const BUNDLED: [&str; 3] = ["affine_sl2.json", "a2_twisted.json", "toroidal_sl2_n2.json"];

#[test]
fn acceptance_01_jacobi_suite() {
    for name in BUNDLED {
        let e = eala_from(name);
        let window = Window::new(e.ml.nullity, 3);
        let mut rng = DetRng::new(0);
        let start = Instant::now();
        match jacobi_check(&e, window, 1000, &mut rng) {
            JacobiOutcome::Pass { samples } => assert_eq!(samples, 1000),
            JacobiOutcome::Fail { witness, .. } => panic!("{}: jacobi failed: {}", name, witness),
        }
        let elapsed = start.elapsed();
        assert!(elapsed.as_secs() < 30, "{}: took {:?}", name, elapsed);
        println!("PASS criterion 1 ({}): 1000 exact Jacobi triples in {:?}", name, elapsed);
    }
}

#[test]
fn acceptance_02_affine_root_system() {
    let e = eala_from("affine_sl2.json");
    let window = Window::new(1, 4);
    let dec = root_decomposition(&e, window).expect("toral");
    let classes = classify_roots(&e, &dec).expect("form nondegenerate on H");
    let mut seen_aniso = 0;
    let mut seen_iso_nonzero = 0;
    for (i, root) in dec.roots.iter().enumerate() {
        let m = root.degree.0[0];
        assert!(m.abs() <= 4);
        if root.is_zero_root() {
            assert_eq!(root.dim(), 3, "dim E_0");
            assert!(classes.isotropic.contains(&i));
        } else if root.finite_part_is_zero() {
            assert_eq!(root.dim(), 1, "dim E_(m delta) at m={}", m);
            assert!(classes.isotropic.contains(&i));
            seen_iso_nonzero += 1;
        } else {
            assert_eq!(root.dim(), 1, "dim E_(alpha+m delta) at m={}", m);
            assert!(classes.anisotropic.contains(&i));
            seen_aniso += 1;
        }
    }
    assert_eq!(seen_aniso, 18, "+-alpha + m delta for |m| <= 4");
    assert_eq!(seen_iso_nonzero, 8, "m delta for 0 < |m| <= 4");
    assert_eq!(dec.roots.len(), 27);
    let iso_degrees: Vec<Vec<i64>> =
        classes.isotropic.iter().map(|&i| dec.roots[i].degree.0.clone()).collect();
    assert_eq!(lattice_rank(&iso_degrees), 1, "EA5 nullity");
    println!("PASS criterion 2: affine sl2 roots at N=4 match with nullity 1");
}

#[test]
fn acceptance_03_twisted_grading_and_descent() {
    let (m, _) = load_manifest(&manifest_path("a2_twisted.json")).unwrap();
    let ml = build_loop(&m).unwrap();
    let window = Window::new(1, 4);
    let report = check_lie_torus(&ml, window);
    assert!(report.all_pass(), "{:?}", report);
    assert_eq!(report.series, Some((Series::BC, 1)));
    for deg in window.degrees() {
        let expect = if deg.0[0].rem_euclid(2) == 0 { 3 } else { 5 };
        assert_eq!(ml.dim_at(&deg), expect, "eigenspace dim at {}", deg);
        let ga = eala_core::multiloop::gamma_action(&ml);
        assert_eq!(ga.fixed_points_at(&deg).len(), expect, "descent dim at {}", deg);
    }
    assert!(descent_matches_eigenbasis(&ml, window).is_ok());
    // Double roots appear only in odd degrees.
    let grading = root_grading(&ml, window).unwrap();
    for deg in window.degrees() {
        let dim_double = grading.dim(&[2], &deg);
        let expect = if deg.0[0].rem_euclid(2) == 0 { 0 } else { 1 };
        assert_eq!(dim_double, expect, "2*alpha at {}", deg);
    }
    println!("PASS criterion 3: L(sl3, omega) is a BC1 torus with matching descent dims");
}

#[test]
fn acceptance_04_core_identity() {
    for name in BUNDLED {
        let e = eala_from(name);
        let window = Window::new(e.ml.nullity, 3);
        let core = core_compute(&e, window).expect("decomposition");
        assert!(core.complete, "{}: closure did not stabilize", name);
        assert!(core.matches_l_plus_c, "{}: core differs from L + C", name);
        assert!(core.centralizer_inside, "{}: EA4 fails", name);
        assert!(core.radical_is_c, "{}: form radical on the core is not C", name);
        println!("PASS criterion 4 ({}): core = L + C, centralizer inside, radical = C", name);
    }
}

#[test]
fn acceptance_05_ideal_dichotomy() {
    for name in BUNDLED {
        let e = eala_from(name);
        let window = Window::new(e.ml.nullity, 3);
        let mut rng = DetRng::new(0);
        let (in_c, with_core) = sample_ideal_dichotomy(&e, window, 50, &mut rng)
            .unwrap_or_else(|w| panic!("{}: inconclusive ideal with generator {:?}", name, w));
        assert_eq!(in_c + with_core, 50);
        println!(
            "PASS criterion 5 ({}): 50 sampled ideals classified ({} central, {} contain the core)",
            name, in_c, with_core
        );
    }
}

#[test]
fn acceptance_06_elementary_lift_contract() {
    let e = eala_from("affine_sl2.json");
    let ml = &e.ml;
    let window = Window::new(1, 3);
    let mut rng = DetRng::new(0);
    let root_slots: Vec<usize> = (ml.base.rank()..ml.base.dim).collect();
    for k in 0..20 {
        let slot = root_slots[rng.below(root_slots.len())];
        let m = rng.int_in(-2, 2);
        let x = ml.element_from_base(&Degree(vec![m]), &ml.base.basis_vec(slot));
        elementary_lift_contract(&e, &x, window)
            .unwrap_or_else(|err| panic!("sample {}: {}", k, err));
    }
    println!("PASS criterion 6: 20 elementary lifts satisfy the three lift properties exactly");
}

#[test]
fn acceptance_07_kernel_group_law() {
    let e = eala_from("toroidal_sl2_n2.json");
    let window = Window::new(2, 2);
    let idx = WindowIndex::new(&e, window);
    let space = derivation_space(&e.da);
    assert!(!space.is_empty());
    let mut rng = DetRng::new(0);
    for _ in 0..8 {
        let psi1 = sample_derivation(&space, e.da.dim(), &mut rng);
        let psi2 = sample_derivation(&space, e.da.dim(), &mut rng);
        let f1 = kernel_automorphism(&e, psi1.clone()).expect("derivation");
        let f2 = kernel_automorphism(&e, psi2.clone()).expect("derivation");
        let f12 = kernel_automorphism(&e, psi1.add(&psi2)).expect("derivation");
        for i in 0..idx.len() {
            let v = idx.basis_element(i);
            assert_eq!(
                apply_e(&e, &f1, &apply_e(&e, &f2, &v)),
                apply_e(&e, &f12, &v),
                "group law fails"
            );
        }
    }
    // A planted non-derivation is rejected with a witness pair.
    let widx = e.da.d_indices_at(&Degree(vec![1, 0]))[0];
    let mut bad = DerMap::zero(e.da.dim());
    bad.values[widx].insert(widx, Scalar::one());
    match kernel_automorphism(&e, bad) {
        Err(eala_core::autmorph::LiftError::NotDerivation(i, j)) => {
            println!(
                "PASS criterion 7: kernel group law exact; non-derivation rejected at pair ({}, {})",
                i, j
            );
        }
        other => panic!("expected NotDerivation, got {:?}", other.map(|_| ())),
    }
}

#[test]
fn acceptance_08_conjugacy_roundtrip() {
    let start = Instant::now();
    let e = eala_from("toroidal_sl2_n2.json");
    let window = Window::new(2, 3);
    let space = derivation_space(&e.da);
    let mut rng = DetRng::new(0);
    let mut nontrivial = 0;
    for k in 0..10 {
        let psi0 = sample_derivation(&space, e.da.dim(), &mut rng);
        let f0 = kernel_automorphism(&e, psi0.clone()).expect("derivation");
        let basis: Vec<GradedElement> =
            e.cartan_basis().iter().map(|h| apply_e(&e, &f0, h)).collect();
        let out = conjugacy_construct(&e, &CartanCandidate { basis }, window, &mut rng)
            .unwrap_or_else(|err| panic!("roundtrip {}: {}", k, err));
        assert!(out.maps_h_onto, "roundtrip {}: f(H) != H'", k);
        assert!(out.verdict.pass, "roundtrip {}: {}", k, out.verdict.detail);
        if !out.psi.is_zero() {
            nontrivial += 1;
        }
    }
    assert!(nontrivial > 0, "all sampled candidates were trivial");

    // Nullity one: H' = H returns the identity, and a candidate with a
    // different core part is rejected.
    let affine = eala_from("affine_sl2.json");
    let window1 = Window::new(1, 3);
    let out = conjugacy_construct(
        &affine,
        &CartanCandidate { basis: affine.cartan_basis() },
        window1,
        &mut rng,
    )
    .expect("identity candidate");
    assert!(out.psi.is_zero());
    assert!(out.maps_h_onto);

    let mut bad_basis = affine.cartan_basis();
    let ml = &affine.ml;
    let x = affine.embed_l(&ml.element_from_base(
        &Degree(vec![0]),
        &ml.base.basis_vec(ml.base.root_slot(&[1])),
    ));
    bad_basis[0] = bad_basis[0].add(&x);
    match conjugacy_construct(&affine, &CartanCandidate { basis: bad_basis }, window1, &mut rng) {
        Err(ConjugacyError::CoreCartanMismatch(_)) => {}
        other => panic!("expected CoreCartanMismatch, got {:?}", other.map(|_| ())),
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "took {:?}", elapsed);
    println!(
        "PASS criterion 8: 10 conjugacy roundtrips ({} nontrivial) plus nullity-one behavior in {:?}",
        nontrivial, elapsed
    );
}

#[test]
fn acceptance_09_gamma_equivariance() {
    let (m, _) = load_manifest(&manifest_path("a2_twisted.json")).unwrap();
    let twisted = build_loop(&m).unwrap();
    let da = eala_cli::manifest::build_derivations(&m, &twisted).unwrap();
    let tau = eala_cli::manifest::build_tau(&m, &da).unwrap();
    let cover = untwisted(&twisted.base, twisted.nullity);
    let e_s = eala_core::eala::assemble_eala(cover, da, tau).unwrap();
    let mut rng = DetRng::new(0);
    let verdict = gamma_equivariance_check(&twisted, &e_s, Window::new(1, 2), 10, &mut rng);
    assert!(verdict.pass, "{}", verdict.detail);
    println!("PASS criterion 9: 10 elementary lifts conjugate equivariantly; kernel maps fixed");
}

#[test]
fn acceptance_10_determinism() {
    use std::process::Command;
    for (args, name) in [
        (vec!["build"], "affine_sl2.json"),
        (vec!["check", "lietorus"], "a2_twisted.json"),
        (vec!["check", "eala"], "affine_sl2.json"),
        (vec!["conjugate"], "conjugacy_roundtrip_n2.json"),
    ] {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_eala"))
                .args(&args)
                .arg("--manifest")
                .arg(manifest_path(name))
                .output()
                .expect("binary runs")
        };
        let a = run();
        let b = run();
        assert_eq!(a.status.code(), b.status.code(), "{:?} {}", args, name);
        assert_eq!(a.stdout, b.stdout, "{:?} {}: reports differ between runs", args, name);
        assert!(!a.stdout.is_empty());
    }
    println!("PASS criterion 10: byte-identical reports for fixed (manifest, seed, version)");
}

/// The kernel-automorphism verification also exercises the identity of the
/// two root decompositions: the core computed from the moved Cartan agrees
/// with the original one (the cores of two structures coincide).
#[test]
fn cores_of_two_structures_coincide() {
    let e = eala_from("toroidal_sl2_n2.json");
    let window = Window::new(2, 2);
    let space = derivation_space(&e.da);
    let mut rng = DetRng::new(4);
    let psi = sample_derivation(&space, e.da.dim(), &mut rng);
    let f = kernel_automorphism(&e, psi).expect("derivation");
    // Anisotropic spaces with respect to H' = f(H) are the f-images of the
    // originals; their ideal closure must again be the window core.
    let dec = root_decomposition(&e, window).expect("toral");
    let classes = classify_roots(&e, &dec).expect("nondegenerate");
    let mut moved: Vec<GradedElement> = Vec::new();
    for &i in &classes.anisotropic {
        for v in &dec.roots[i].basis {
            moved.push(apply_e(&e, &f, v));
        }
    }
    let closure = eala_core::glie::ideal_closure_at_window(&e, &moved, window);
    let idx = WindowIndex::new(&e, window);
    let mut space_moved = eala_core::exactnum::EchelonSpace::new();
    for v in &closure.basis {
        space_moved.insert(&idx.to_vec(v));
    }
    let lc = e.l_plus_c_window(window);
    assert_eq!(space_moved.dim(), lc.len());
    for v in &lc {
        assert!(space_moved.contains_vec(&idx.to_vec(v)));
    }
}

/// Elementary and kernel automorphisms both stabilize the core and verify
/// as automorphisms; composites inherit both properties.
#[test]
fn composite_automorphisms_verify() {
    let e = eala_from("affine_sl2.json");
    let ml = &e.ml;
    let window = Window::new(1, 2);
    let x = ml.element_from_base(&Degree(vec![1]), &ml.base.basis_vec(ml.base.root_slot(&[1])));
    let f = eala_core::autmorph::exp_ad(ml, &x).expect("nilpotent");
    let mut psi = DerMap::zero(e.da.dim());
    psi.values[0].insert(0, Scalar::rational(1, 2));
    let g = kernel_automorphism(&e, psi).expect("derivation");
    let composite = eala_core::autmorph::AutomorphismRep::Composite(vec![f, g]);
    let mut rng = DetRng::new(8);
    let verdict = verify_automorphism(&e, &composite, window, 60, &mut rng);
    assert!(verdict.pass, "{}", verdict.detail);
    assert!(eala_core::autmorph::core_stable(&e, &composite, window));
}

/// A planted violation in a cocycle table is reported at assembly time, so
/// corrupted structures cannot reach the axiom checkers.
#[test]
fn corrupted_cocycle_rejected_before_checks() {
    let (m, _) = load_manifest(&manifest_path("affine_sl2.json")).unwrap();
    let ml = build_loop(&m).unwrap();
    let da = eala_cli::manifest::build_derivations(&m, &ml).unwrap();
    let mut tau = eala_core::dercoc::AffineCocycle::zero();
    let mut c = CElement::new();
    c.insert(0, Scalar::one());
    tau.table.insert((0, 0), c);
    assert!(eala_core::eala::assemble_eala(ml, da, tau).is_err());
}
