//! Constructive conjugacy of Cartan subalgebras with equal centreless-core
//! part: produce `f` in the kernel of the restriction map with `f(H) = H'`.
//!
//! The algorithm: verify `H' . E_c = H_c`, project the complement of `H_c`
//! in `H'` onto `C^(!=0) + D^0` and read off the graph map `xi`, solve the
//! weight equation `(d^mu . xi(d^0))^lambda = ev_(lambda-mu)(d^0) c^lambda`
//! for the nonzero-degree components of `psi` (checking consistency over all
//! admissible `d^0`), extend by `psi|_(D^0) = xi`, verify the derivation
//! identity, and return the kernel automorphism.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::dercoc::{c_add_scaled, d_act_on_c, CElement};
use crate::eala::EalaStructure;
use crate::exactnum::{EchelonSpace, Scalar, Solver, SparseMatrix, SparseVec};
use crate::glie::{bracket, Degree, GradedElement, Window, WindowIndex};
use crate::multiloop::Verdict;
use crate::sampling::DetRng;

use super::lift::{kernel_automorphism, LiftError};
use super::rep::{apply_e, verify_automorphism, AutomorphismRep, DerMap};

/// A candidate Cartan subalgebra given by a spanning set.
#[derive(Clone, Debug)]
pub struct CartanCandidate {
    pub basis: Vec<GradedElement>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ConjugacyError {
    /// Malformed candidate (empty, non-abelian, wrong component shape).
    InvalidCandidate(String),
    /// `H' . E_c` differs from `H_c`.
    CoreCartanMismatch(String),
    /// The complement of `H_c` does not project onto a graph over `D^0`.
    NotAGraph(String),
    /// The weight equation is overdetermined and inconsistent.
    InconsistentWeightEquation(String),
    /// The assembled `psi` is not a derivation (witness pair).
    NotDerivation(usize, usize),
}

impl fmt::Display for ConjugacyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConjugacyError::InvalidCandidate(s) => write!(f, "invalid Cartan candidate: {}", s),
            ConjugacyError::CoreCartanMismatch(s) => {
                write!(f, "core parts of the Cartans differ: {}", s)
            }
            ConjugacyError::NotAGraph(s) => write!(f, "complement is not a graph over D^0: {}", s),
            ConjugacyError::InconsistentWeightEquation(s) => {
                write!(f, "weight equation inconsistent: {}", s)
            }
            ConjugacyError::NotDerivation(i, j) => {
                write!(f, "recovered psi fails the derivation identity on ({}, {})", i, j)
            }
        }
    }
}

impl From<LiftError> for ConjugacyError {
    fn from(err: LiftError) -> Self {
        match err {
            LiftError::NotDerivation(i, j) => ConjugacyError::NotDerivation(i, j),
            other => ConjugacyError::InvalidCandidate(format!("{}", other)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConjugacyOutcome {
    pub rep: AutomorphismRep,
    pub psi: DerMap,
    /// Exact span equality `f(H) = H'`.
    pub maps_h_onto: bool,
    /// Sampled automorphism verification.
    pub verdict: Verdict,
}

pub fn conjugacy_construct(
    e: &EalaStructure,
    candidate: &CartanCandidate,
    window: Window,
    rng: &mut DetRng,
) -> Result<ConjugacyOutcome, ConjugacyError> {
    if candidate.basis.is_empty() {
        return Err(ConjugacyError::InvalidCandidate(String::from("empty basis")));
    }
    for (i, x) in candidate.basis.iter().enumerate() {
        for (j, y) in candidate.basis.iter().enumerate() {
            if i < j && !bracket(e, x, y).is_zero() {
                return Err(ConjugacyError::InvalidCandidate(format!(
                    "basis vectors {} and {} do not commute",
                    i, j
                )));
            }
        }
    }

    // Shared flat coordinates wide enough for H, H', and the support of D.
    let mut bound = window.bound;
    for b in &candidate.basis {
        for (d, _) in b.terms.keys() {
            bound = bound.max(d.sup_norm());
        }
    }
    for deg in e.da.support() {
        bound = bound.max(deg.sup_norm());
    }
    let wide = Window::new(e.ml.nullity, bound);
    let idx = WindowIndex::new(e, wide);

    let h_basis = e.cartan_basis();
    let zero = Degree::zero(e.ml.nullity);
    let d0_indices = e.da.d_indices_at(&zero);

    // Component shape per the structure of Cartans: L-part inside h,
    // D-part inside D^0.
    let mut h_l_space = EchelonSpace::new();
    for k in 0..e.ml.cartan_dim() {
        h_l_space.insert(&idx.to_vec(&e.embed_l(&e.ml.cartan_element(k))));
    }
    for (i, b) in candidate.basis.iter().enumerate() {
        let l_part = e.embed_l(&e.l_component(b));
        if !h_l_space.contains_vec(&idx.to_vec(&l_part)) {
            return Err(ConjugacyError::CoreCartanMismatch(format!(
                "L-part of basis vector {} leaves the fixed Cartan of L",
                i
            )));
        }
        for (k, _) in e.d_component(b) {
            if !e.da.degree_of(k).is_zero() {
                return Err(ConjugacyError::NotAGraph(format!(
                    "basis vector {} has a component along D of degree {}",
                    i,
                    e.da.degree_of(k)
                )));
            }
        }
    }

    // Span of the candidate; dimension must match H.
    let mut hp_space = EchelonSpace::new();
    for b in &candidate.basis {
        hp_space.insert(&idx.to_vec(b));
    }
    if hp_space.dim() != h_basis.len() {
        return Err(ConjugacyError::CoreCartanMismatch(format!(
            "dim H' = {} but dim H = {}",
            hp_space.dim(),
            h_basis.len()
        )));
    }

    // Intersection with E_c: combinations with vanishing D-part must span
    // exactly H_c = h + C^0.
    let span_basis: Vec<GradedElement> =
        hp_space.basis().iter().map(|v| idx.to_element(v)).collect();
    let mut dmat = SparseMatrix::new(e.da.dim(), span_basis.len());
    for (col, b) in span_basis.iter().enumerate() {
        for (k, c) in e.d_component(b) {
            dmat.set(k, col, c);
        }
    }
    let mut hc_space = EchelonSpace::new();
    for k in 0..e.ml.cartan_dim() {
        hc_space.insert(&idx.to_vec(&e.embed_l(&e.ml.cartan_element(k))));
    }
    for k in e.da.c_indices_at(&zero) {
        let mut c = CElement::new();
        c.insert(k, Scalar::one());
        hc_space.insert(&idx.to_vec(&e.embed_c(&c)));
    }
    let mut intersection = EchelonSpace::new();
    for combo in dmat.kernel_basis() {
        let mut v = GradedElement::zero();
        for (col, coeff) in combo {
            v.add_scaled(&span_basis[col], &coeff);
        }
        intersection.insert(&idx.to_vec(&v));
    }
    if intersection.dim() != hc_space.dim()
        || !intersection
            .basis()
            .iter()
            .all(|v| hc_space.contains_vec(v))
    {
        return Err(ConjugacyError::CoreCartanMismatch(format!(
            "H' . E_c has dimension {} (expected {})",
            intersection.dim(),
            hc_space.dim()
        )));
    }

    // Extract the graph map xi : D^0 -> C^(!=0) from the span.
    let solver = Solver::new(&dmat);
    let mut xi: alloc::collections::BTreeMap<usize, CElement> = alloc::collections::BTreeMap::new();
    for &k in &d0_indices {
        let mut target = SparseVec::new();
        target.insert(k, Scalar::one());
        let Some(coords) = solver.solve(&target) else {
            return Err(ConjugacyError::NotAGraph(format!(
                "no element of H' has D-part d{}",
                k
            )));
        };
        let mut w = GradedElement::zero();
        for (col, coeff) in coords {
            w.add_scaled(&span_basis[col], &coeff);
        }
        let mut c_nonzero = CElement::new();
        for (j, c) in e.c_component(&w) {
            if !e.da.degree_of(j).is_zero() {
                c_nonzero.insert(j, c);
            }
        }
        xi.insert(k, c_nonzero);
    }

    // Solve the weight equation for the nonzero-degree part of psi.
    let mut psi = DerMap::zero(e.da.dim());
    for (&k, c) in &xi {
        psi.values[k] = c.clone();
    }
    let dual_degrees: Vec<Degree> = e.da.support().iter().map(|d| d.neg()).collect();
    for m in 0..e.da.dim() {
        let mu = e.da.degree_of(m).clone();
        if mu.is_zero() {
            continue;
        }
        let mut value = CElement::new();
        for lambda in &dual_degrees {
            if *lambda == mu {
                continue;
            }
            let shift = lambda.sub(&mu);
            // Deterministic choice: first D^0 basis vector with nonzero
            // evaluation; the remaining ones are consistency checks.
            let evals: Vec<(usize, Scalar)> = d0_indices
                .iter()
                .map(|&k| (k, Scalar::from_rat(e.da.basis[k].1.eval(&shift))))
                .collect();
            let Some((k0, ev0)) = evals.iter().find(|(_, ev)| !ev.is_zero()).cloned() else {
                // ev separates the lattice, so this happens only at
                // lambda = mu, excluded above.
                return Err(ConjugacyError::InconsistentWeightEquation(format!(
                    "no degree derivation separates {} from {}",
                    lambda, mu
                )));
            };
            let image = d_act_on_c(&e.da, m, &xi[&k0]);
            let mut c_lambda = CElement::new();
            for (j, c) in component_at(e, &image, lambda) {
                c_lambda.insert(j, c.div(&ev0).expect("nonzero evaluation"));
            }
            // Consistency across every other admissible choice.
            for (k1, ev1) in &evals {
                let image1 = d_act_on_c(&e.da, m, &xi[k1]);
                let mut lhs = CElement::new();
                for (j, c) in component_at(e, &image1, lambda) {
                    lhs.insert(j, c);
                }
                let mut rhs = CElement::new();
                c_add_scaled(&mut rhs, &c_lambda, ev1);
                if lhs != rhs {
                    return Err(ConjugacyError::InconsistentWeightEquation(format!(
                        "component {} of psi(d{}) differs between d{} and d{}",
                        lambda, m, k0, k1
                    )));
                }
            }
            c_add_scaled(&mut value, &c_lambda, &Scalar::one());
        }
        psi.values[m] = value;
    }

    // Derivation identity, then the kernel automorphism.
    let rep = kernel_automorphism(e, psi.clone())?;

    // f(H) must equal H' as a span.
    let mut image_space = EchelonSpace::new();
    for h in &h_basis {
        image_space.insert(&idx.to_vec(&apply_e(e, &rep, h)));
    }
    let maps_h_onto = image_space.dim() == hp_space.dim()
        && hp_space.basis().iter().all(|v| image_space.contains_vec(v));

    let verdict = verify_automorphism(e, &rep, window, 60, rng);
    Ok(ConjugacyOutcome { rep, psi, maps_h_onto, verdict })
}

/// Entries of a functional supported on the duals of `D^(-lambda)`, i.e.
/// its component in `C^lambda`.
fn component_at(e: &EalaStructure, c: &CElement, lambda: &Degree) -> Vec<(usize, Scalar)> {
    c.iter()
        .filter(|(&j, _)| e.da.degree_of(j) == &lambda.neg())
        .map(|(&j, v)| (j, v.clone()))
        .collect()
}
