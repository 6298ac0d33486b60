//! The three lifting mechanisms: elementary exponentials, kernel maps, and
//! grading-preserving lifts, together with the Galois lifts and the
//! equivariance check over the covering algebra.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::dercoc::CElement;
use crate::eala::EalaStructure;
use crate::exactnum::{Scalar, SparseMatrix, SparseVec};
use crate::glie::{bracket, Degree, GradedElement, GradedLieAlgebra, Window, WindowIndex};
use crate::multiloop::{MultiloopAlgebra, Verdict};
use crate::sampling::DetRng;

use super::rep::{apply_e, apply_l, AutomorphismRep, Character, DerMap};
#[cfg(test)]
use super::rep::verify_automorphism;

#[derive(Clone, Debug, PartialEq)]
pub enum LiftError {
    /// `ad x` fails to be nilpotent; carries a witness description.
    NotNilpotent(String),
    /// `psi` violates the derivation identity on the witness pair.
    NotDerivation(usize, usize),
    /// The grading map does not commute with a derivation degree.
    NotCommutingWithD(Degree),
    /// The map is not an automorphism of `L` (witness description).
    NotAutomorphismOfL(String),
}

impl fmt::Display for LiftError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftError::NotNilpotent(w) => write!(f, "ad x is not nilpotent: {}", w),
            LiftError::NotDerivation(i, j) => {
                write!(f, "psi is not a derivation on the pair ({}, {})", i, j)
            }
            LiftError::NotCommutingWithD(d) => {
                write!(f, "map does not commute with derivations of degree {}", d)
            }
            LiftError::NotAutomorphismOfL(w) => write!(f, "not an automorphism of L: {}", w),
        }
    }
}

/// Verify nilpotency of `ad_L x` on the residue representatives and wrap the
/// exponential as a lazy representation (valid on `L` and on `E`).
pub fn exp_ad(ml: &MultiloopAlgebra, x: &GradedElement) -> Result<AutomorphismRep, LiftError> {
    let cap = ml.base.dim + 2;
    for residue in crate::multiloop::residues(&ml.orders) {
        let deg = Degree(residue.clone());
        for slot in 0..ml.dim_at(&deg) {
            let mut v = GradedElement::single(deg.clone(), slot, Scalar::one());
            let mut steps = 0;
            while !v.is_zero() {
                if steps > cap {
                    return Err(LiftError::NotNilpotent(format!(
                        "(ad x)^{} nonzero on slot {} of residue {}",
                        steps, slot, deg
                    )));
                }
                v = bracket(ml, x, &v);
                steps += 1;
            }
        }
    }
    Ok(AutomorphismRep::Elementary { word: alloc::vec![x.clone()] })
}

/// The kernel automorphism `l + c + d -> l + (c + psi(d)) + d`; accepted iff
/// `psi` is a derivation from `D` to `C`.
pub fn kernel_automorphism(e: &EalaStructure, psi: DerMap) -> Result<AutomorphismRep, LiftError> {
    assert_eq!(psi.values.len(), e.da.dim());
    psi.check_derivation(&e.da)
        .map_err(|(i, j)| LiftError::NotDerivation(i, j))?;
    Ok(AutomorphismRep::Kernel { psi })
}

/// Lift an invertible degree-preserving map of `L`, given by a matrix on
/// the base algebra and a degree character, to `f_g(l + c + d) = g(l) + c + d`.
/// Accepted iff `g` commutes with every derivation in `D` and is an
/// automorphism of `L`.
pub fn lift_grading_preserving(
    e: &EalaStructure,
    gmat: SparseMatrix,
    character: Character,
) -> Result<AutomorphismRep, LiftError> {
    let ml = &e.ml;
    if gmat.inverse().is_none() {
        return Err(LiftError::NotAutomorphismOfL(String::from("matrix not invertible")));
    }
    // Commutation with D: homogeneous of degree 0 in our representation, so
    // the only obstruction is the character on the degrees of D.
    for (deg, _) in &e.da.basis {
        if !character.is_trivial_on(deg) {
            return Err(LiftError::NotCommutingWithD(deg.clone()));
        }
    }
    // g must preserve each eigenspace (degree preservation inside L).
    for residue in crate::multiloop::residues(&ml.orders) {
        let deg = Degree(residue);
        for slot in 0..ml.dim_at(&deg) {
            let moved = gmat.apply(ml.slot_vector(&deg, slot));
            if !moved.is_empty()
                && crate::exactnum::Solver::new(&SparseMatrix::from_columns(
                    ml.base.dim,
                    ml.eigenbasis(&ml.residue_of(&deg)),
                ))
                .solve(&moved)
                .is_none()
            {
                return Err(LiftError::NotAutomorphismOfL(format!(
                    "residue class {} not preserved",
                    deg
                )));
            }
        }
    }
    // Bracket preservation on the base: g[x,y] = [gx, gy].
    for i in 0..ml.base.dim {
        for j in 0..ml.base.dim {
            let lhs = gmat.apply(&ml.base.bracket_slots(i, j));
            let rhs = ml.base.bracket(&gmat.column(i), &gmat.column(j));
            if lhs != rhs {
                return Err(LiftError::NotAutomorphismOfL(format!(
                    "bracket not preserved on base pair ({}, {})",
                    i, j
                )));
            }
        }
    }
    Ok(AutomorphismRep::Grading { gmat, character })
}

/// The lift `f_gamma` of a Galois group element acting on the covering
/// algebra `g tensor S`: `sigma^(-1)` on the base and the degree character
/// `zeta^(gamma . lambda)` on `z^lambda`.
pub fn gamma_lift(
    twisted: &MultiloopAlgebra,
    e_s: &EalaStructure,
    gamma: &[i64],
) -> Result<AutomorphismRep, LiftError> {
    assert_eq!(gamma.len(), twisted.nullity);
    let mut gmat = SparseMatrix::identity(twisted.base.dim);
    for (i, &g) in gamma.iter().enumerate() {
        let m = twisted.orders[i];
        let inv = twisted.auts[i].matrix.pow(m.saturating_sub(1));
        for _ in 0..g.rem_euclid(m as i64) {
            gmat = inv.mul(&gmat);
        }
    }
    let character = Character { orders: twisted.orders.clone(), residues: gamma.to_vec() };
    lift_grading_preserving(e_s, gmat, character)
}

/// Basis of the space of derivations `Der(D, C)`, solved from the linear
/// identity on basis pairs.
pub fn derivation_space(da: &crate::dercoc::DAlgebra) -> Vec<DerMap> {
    let n = da.dim();
    // Unknowns: psi(d_j) = sum_k x_{j,k} c_k; constraint rows per pair and
    // output coordinate.
    let unknowns = n * n;
    let mut rows: Vec<SparseVec> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let mut row_per_out: alloc::collections::BTreeMap<usize, SparseVec> =
                alloc::collections::BTreeMap::new();
            // psi([d_i, d_j]) term.
            for (t, r) in da.bracket_basis(i, j) {
                for k in 0..n {
                    row_per_out
                        .entry(k)
                        .or_default()
                        .insert(t * n + k, Scalar::from_rat(r.clone()));
                }
            }
            // -d_i . psi(d_j) + d_j . psi(d_i): the action moves c_m to
            // combinations of c_k with coefficient act(i)_{m -> k}.
            for m in 0..n {
                for (k, r) in da.act_on_dual(i, m) {
                    let entry = row_per_out.entry(k).or_default();
                    let cur = entry.get(&(j * n + m)).cloned().unwrap_or_else(Scalar::zero);
                    entry.insert(j * n + m, cur.sub(&Scalar::from_rat(r)));
                }
                for (k, r) in da.act_on_dual(j, m) {
                    let entry = row_per_out.entry(k).or_default();
                    let cur = entry.get(&(i * n + m)).cloned().unwrap_or_else(Scalar::zero);
                    entry.insert(i * n + m, cur.add(&Scalar::from_rat(r)));
                }
            }
            for (_, mut row) in row_per_out {
                row.retain(|_, s| !s.is_zero());
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    let mut m = SparseMatrix::new(rows.len().max(1), unknowns);
    for (r, row) in rows.iter().enumerate() {
        for (&c, s) in row {
            m.set(r, c, s.clone());
        }
    }
    m.kernel_basis()
        .into_iter()
        .map(|v| {
            let mut psi = DerMap::zero(n);
            for (idx, s) in v {
                let (j, k) = (idx / n, idx % n);
                psi.values[j].insert(k, s);
            }
            psi
        })
        .collect()
}

/// Draw a rational combination of the derivation space.
pub fn sample_derivation(space: &[DerMap], dim: usize, rng: &mut DetRng) -> DerMap {
    let mut out = DerMap::zero(dim);
    for basis in space {
        let coeff = rng.small_coeff();
        let mut scaled = DerMap::zero(dim);
        for (k, c) in basis.values.iter().enumerate() {
            crate::dercoc::c_add_scaled(&mut scaled.values[k], c, &coeff);
        }
        out = out.add(&scaled);
    }
    out
}

/// Equivariance of the restriction map over the covering algebra: for
/// sampled elementary lifts `f` and all Galois elements,
/// `res(f_gamma . f . f_gamma^(-1)) = gamma . res(f) . gamma^(-1)` on the
/// window basis of `g tensor S`; kernel automorphisms are fixed points.
pub fn gamma_equivariance_check(
    twisted: &MultiloopAlgebra,
    e_s: &EalaStructure,
    window: Window,
    samples: usize,
    rng: &mut DetRng,
) -> Verdict {
    let ml_s = &e_s.ml;
    let idx = WindowIndex::new(ml_s, window);
    let gammas: Vec<Vec<i64>> = crate::multiloop::residues(&twisted.orders)
        .into_iter()
        .filter(|g| g.iter().any(|&c| c != 0))
        .collect();
    if gammas.is_empty() {
        return Verdict::pass("trivial Galois group: vacuous");
    }
    // Pool of nilpotent generators: base root vectors at window degrees.
    let root_slots: Vec<usize> = (ml_s.base.rank()..ml_s.base.dim).collect();
    let degrees = window.degrees();
    let mut lifts = Vec::new();
    for gamma in &gammas {
        match gamma_lift(twisted, e_s, gamma) {
            Ok(g) => {
                let inv = g.inverse();
                lifts.push((gamma.clone(), g, inv));
            }
            Err(err) => return Verdict::fail(format!("gamma lift failed: {}", err)),
        }
    }
    for s in 0..samples {
        let slot = root_slots[rng.below(root_slots.len())];
        let deg = degrees[rng.below(degrees.len())].clone();
        let x = ml_s.element_from_base(&deg, &ml_s.base.basis_vec(slot));
        let f = match exp_ad(ml_s, &x) {
            Ok(f) => f,
            Err(err) => return Verdict::fail(format!("sample {}: {}", s, err)),
        };
        for (gamma, fg, fg_inv) in &lifts {
            for t in 0..idx.len() {
                let l = idx.basis_element(t);
                // res of f_gamma . f~ . f_gamma^(-1): apply in E_S and
                // project to L.
                let conj =
                    apply_e(e_s, fg, &apply_e(e_s, &f, &apply_e(e_s, fg_inv, &e_s.embed_l(&l))));
                let lhs = e_s.l_component(&conj);
                // gamma . res(f~) . gamma^(-1) directly on L.
                let rhs = apply_l(
                    ml_s,
                    fg,
                    &apply_l(ml_s, &f, &apply_l(ml_s, fg_inv, &l)),
                );
                if lhs != rhs {
                    return Verdict::fail(format!(
                        "conjugation identity fails for gamma {:?} on window vector {}",
                        gamma, t
                    ));
                }
            }
        }
    }
    // Kernel automorphisms are fixed by the Galois action.
    let der_space = derivation_space(&e_s.da);
    let psi = sample_derivation(&der_space, e_s.da.dim(), rng);
    match kernel_automorphism(e_s, psi) {
        Ok(f_psi) => {
            let e_idx = WindowIndex::new(e_s, window);
            for (gamma, fg, fg_inv) in &lifts {
                for t in 0..e_idx.len() {
                    let v = e_idx.basis_element(t);
                    let conj = apply_e(e_s, fg, &apply_e(e_s, &f_psi, &apply_e(e_s, fg_inv, &v)));
                    let plain = apply_e(e_s, &f_psi, &v);
                    if conj != plain {
                        return Verdict::fail(format!(
                            "kernel automorphism moved by gamma {:?}",
                            gamma
                        ));
                    }
                }
            }
        }
        Err(err) => return Verdict::fail(format!("sampled psi rejected: {}", err)),
    }
    Verdict::pass(format!("equivariant on {} elementary samples", samples))
}

/// The three contract properties of an elementary lift, checked exactly on
/// the window basis: the `L`-component of the restriction is the exponential
/// on `L`, the centre is fixed pointwise, and derivations are displaced
/// inside `L + C`.
pub fn elementary_lift_contract(
    e: &EalaStructure,
    x: &GradedElement,
    window: Window,
) -> Result<(), String> {
    let f = exp_ad(&e.ml, x).map_err(|err| format!("{}", err))?;
    let ml_idx = WindowIndex::new(&e.ml, window);
    for t in 0..ml_idx.len() {
        let l = ml_idx.basis_element(t);
        let lifted = apply_e(e, &f, &e.embed_l(&l));
        // (i) image lands in L + C with L-component exp(ad_L x).
        let expect_l = apply_l(&e.ml, &f, &l);
        if e.l_component(&lifted) != e.embed_l(&expect_l) {
            return Err(format!("L-component mismatch on window vector {}", t));
        }
        if !e.d_component(&lifted).is_empty() {
            return Err(format!("image of L vector {} has a D-component", t));
        }
    }
    // (ii) identity on C.
    for k in 0..e.da.dim() {
        let mut c = CElement::new();
        c.insert(k, Scalar::one());
        let v = e.embed_c(&c);
        if apply_e(e, &f, &v) != v {
            return Err(format!("centre vector {} moved", k));
        }
    }
    // (iii) d displaced inside L + C.
    for k in 0..e.da.dim() {
        let v = e.embed_d(&[(k, Scalar::one())]);
        let moved = apply_e(e, &f, &v);
        let displacement = moved.sub(&v);
        if !e.d_component(&displacement).is_empty() {
            return Err(format!("displacement of d{} leaves L + C", k));
        }
    }
    Ok(())
}


#[cfg(test)]
mod ad_formula_tests {
    use super::*;
    use crate::dercoc::{build_d_algebra, AffineCocycle, CElement};
    use crate::eala::{assemble_eala, sigma_into_e};
    use crate::glie::bracket as gbracket;
    use crate::multiloop::untwisted;
    use crate::rootsys::{build_root_system, build_simple_algebra, Series};

    /// For `x` in `L` and `e = l + c + d`, the iterates of `ad_E x` stay in
    /// `L + C` and satisfy the closed form
    /// `(ad_E x)^n(e) = (ad_L x)^(n-1)(e_1) + sigma(x, (ad_L x)^(n-2)(e_1))`
    /// with `e_1 = [x, l] - d(x)`.
    #[test]
    fn iterated_ad_matches_the_closed_form() {
        let base = build_simple_algebra(&build_root_system(Series::A, 1).unwrap()).unwrap();
        let ml = untwisted(&base, 1);
        let da = build_d_algebra(1, &[1], &[], 4).unwrap();
        let e = assemble_eala(ml, da, AffineCocycle::zero()).unwrap();
        let ml = &e.ml;
        let x = ml.element_from_base(&Degree(alloc::vec![1]), &ml.base.basis_vec(ml.base.root_slot(&[1])));
        let x_e = e.embed_l(&x);

        // e = f tensor 1/t + c + d
        let l = ml.element_from_base(
            &Degree(alloc::vec![-1]),
            &ml.base.basis_vec(ml.base.root_slot(&[-1])),
        );
        let mut c = CElement::new();
        c.insert(0, Scalar::rational(1, 3));
        let mut v = e.embed_l(&l).add(&e.embed_c(&c));
        v = v.add(&e.embed_d(&[(0, Scalar::from_int(2))]));

        // e_1 = [x, l]_L - d(x) with d = 2 * degree derivation.
        let mut e1 = gbracket(ml, &x, &l);
        e1.add_scaled(&e.da.derivation(0).apply(&x), &Scalar::from_int(-2));

        let mut iterate = v.clone();
        for n in 1..=4 {
            iterate = gbracket(&e, &x_e, &iterate);
            if n == 1 {
                // (ad_E x)(e) = e_1 + sigma(x, l).
                let expect = e.embed_l(&e1).add(&sigma_into_e(&e, &x, &l));
                assert_eq!(iterate, expect, "first step");
            } else {
                let expect = e.embed_l(&ad_power(ml, &x, &e1, n - 1))
                    .add(&sigma_into_e(&e, &x, &ad_power(ml, &x, &e1, n - 2)));
                assert_eq!(iterate, expect, "step {}", n);
            }
        }
    }

    fn ad_power(
        ml: &crate::multiloop::MultiloopAlgebra,
        x: &GradedElement,
        e1: &GradedElement,
        n: usize,
    ) -> GradedElement {
        let mut out = e1.clone();
        for _ in 0..n {
            out = gbracket(ml, x, &out);
        }
        out
    }
}
