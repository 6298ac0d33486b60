//! Bracket evaluation and window-bounded search operations.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::exactnum::{EchelonSpace, Scalar, SparseMatrix};
use crate::sampling::DetRng;

use super::element::{Degree, GradedElement, Window, WindowIndex};
use super::GradedLieAlgebra;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GlieError {
    /// An element references a (degree, slot) pair the algebra does not have.
    ForeignElement { degree: Degree, slot: usize },
}

impl fmt::Display for GlieError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GlieError::ForeignElement { degree, slot } => {
                write!(f, "element has no basis slot {} in degree {}", slot, degree)
            }
        }
    }
}

/// Validate that every term of `x` addresses an existing basis slot.
pub fn check_element<A: GradedLieAlgebra + ?Sized>(alg: &A, x: &GradedElement) -> Result<(), GlieError> {
    for (d, s) in x.terms.keys() {
        if *s >= alg.dim_at(d) {
            return Err(GlieError::ForeignElement { degree: d.clone(), slot: *s });
        }
    }
    Ok(())
}

/// Exact bracket, bilinear over the algebra's basis rule.
pub fn bracket<A: GradedLieAlgebra + ?Sized>(
    alg: &A,
    x: &GradedElement,
    y: &GradedElement,
) -> GradedElement {
    let mut out = GradedElement::zero();
    for ((d1, s1), c1) in &x.terms {
        for ((d2, s2), c2) in &y.terms {
            let coeff = c1.mul(c2);
            if coeff.is_zero() {
                continue;
            }
            out.add_scaled(&alg.bracket_basis(d1, *s1, d2, *s2), &coeff);
        }
    }
    out
}

/// Window basis as elements, in index order.
pub fn window_basis<A: GradedLieAlgebra + ?Sized>(alg: &A, window: Window) -> Vec<GradedElement> {
    let idx = WindowIndex::new(alg, window);
    (0..idx.len()).map(|i| idx.basis_element(i)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JacobiOutcome {
    Pass { samples: usize },
    Fail { triple: [(Degree, usize); 3], witness: String },
}

/// Evaluate the Jacobi sum on random homogeneous basis triples inside the
/// window. Degenerate draws (a degree with no basis vectors) are retried.
pub fn jacobi_check<A: GradedLieAlgebra + ?Sized>(
    alg: &A,
    window: Window,
    samples: usize,
    rng: &mut DetRng,
) -> JacobiOutcome {
    let idx = WindowIndex::new(alg, window);
    if idx.is_empty() {
        return JacobiOutcome::Pass { samples: 0 };
    }
    for _ in 0..samples {
        let a = idx.entries[rng.below(idx.len())].clone();
        let b = idx.entries[rng.below(idx.len())].clone();
        let c = idx.entries[rng.below(idx.len())].clone();
        let ea = GradedElement::single(a.0.clone(), a.1, Scalar::one());
        let eb = GradedElement::single(b.0.clone(), b.1, Scalar::one());
        let ec = GradedElement::single(c.0.clone(), c.1, Scalar::one());
        let mut sum = bracket(alg, &bracket(alg, &ea, &eb), &ec);
        sum.add_scaled(&bracket(alg, &bracket(alg, &eb, &ec), &ea), &Scalar::one());
        sum.add_scaled(&bracket(alg, &bracket(alg, &ec, &ea), &eb), &Scalar::one());
        if !sum.is_zero() {
            return JacobiOutcome::Fail { triple: [a, b, c], witness: sum.render(alg) };
        }
    }
    JacobiOutcome::Pass { samples }
}

/// Basis of `{x supported in the window : [x, s] = 0 for all generators s}`.
pub fn centralizer_at_window<A: GradedLieAlgebra + ?Sized>(
    alg: &A,
    generators: &[GradedElement],
    window: Window,
) -> Vec<GradedElement> {
    let idx = WindowIndex::new(alg, window);
    if idx.is_empty() {
        return Vec::new();
    }
    // Rows: output coordinates per generator; columns: window basis.
    let mut row_index: alloc::collections::BTreeMap<(usize, Degree, usize), usize> =
        alloc::collections::BTreeMap::new();
    let mut triplets: Vec<((usize, Degree, usize), usize, Scalar)> = Vec::new();
    for col in 0..idx.len() {
        let v = idx.basis_element(col);
        for (g, gen) in generators.iter().enumerate() {
            let out = bracket(alg, &v, gen);
            for ((d, s), c) in &out.terms {
                let key = (g, d.clone(), *s);
                let next = row_index.len();
                row_index.entry(key.clone()).or_insert(next);
                triplets.push((key, col, c.clone()));
            }
        }
    }
    let mut m = SparseMatrix::new(row_index.len().max(1), idx.len());
    for (key, col, s) in triplets {
        m.set(row_index[&key], col, s);
    }
    m.kernel_basis().iter().map(|v| idx.to_element(v)).collect()
}

#[derive(Clone, Debug)]
pub struct ClosureResult {
    pub basis: Vec<GradedElement>,
    /// Reached a fixpoint before the round cap.
    pub complete: bool,
    pub rounds: usize,
}

pub const CLOSURE_ROUND_CAP: usize = 50;

/// Smallest window-truncated subspace containing the generators and closed
/// under bracketing with window basis elements. Terms leaving the window are
/// discarded; the iteration caps at [`CLOSURE_ROUND_CAP`] rounds and reports
/// whether a fixpoint was reached.
pub fn ideal_closure_at_window<A: GradedLieAlgebra + ?Sized>(
    alg: &A,
    generators: &[GradedElement],
    window: Window,
) -> ClosureResult {
    let idx = WindowIndex::new(alg, window);
    let mut space = EchelonSpace::new();
    let mut frontier: Vec<GradedElement> = Vec::new();
    for g in generators {
        let t = g.truncated(&window);
        if space.insert(&idx.to_vec(&t)) {
            frontier.push(t);
        }
    }
    let basis_elems: Vec<GradedElement> = (0..idx.len()).map(|i| idx.basis_element(i)).collect();
    let mut rounds = 0;
    let mut complete = false;
    while rounds < CLOSURE_ROUND_CAP {
        rounds += 1;
        let mut next: Vec<GradedElement> = Vec::new();
        for v in &frontier {
            for b in &basis_elems {
                let w = bracket(alg, b, v).truncated(&window);
                if w.is_zero() {
                    continue;
                }
                let wv = idx.to_vec(&w);
                if space.insert(&wv) {
                    next.push(w);
                }
            }
        }
        if next.is_empty() {
            complete = true;
            break;
        }
        frontier = next;
    }
    let basis = space.basis().iter().map(|v| idx.to_element(v)).collect();
    ClosureResult { basis, complete, rounds }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealClass {
    SubsetOfC,
    ContainsCore,
    /// The window (or the round cap) was too small to decide.
    Inconclusive,
}

impl fmt::Display for IdealClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IdealClass::SubsetOfC => "SubsetOfC",
            IdealClass::ContainsCore => "ContainsCore",
            IdealClass::Inconclusive => "Inconclusive",
        };
        write!(f, "{}", s)
    }
}

/// Decide the ideal dichotomy at window scale: the closure of the generators
/// either stays inside the centre `C` or swallows the window part of the
/// core. `c_window` and `core_window` are window bases of those two spaces.
pub fn classify_ideal_with<A: GradedLieAlgebra + ?Sized>(
    alg: &A,
    generators: &[GradedElement],
    window: Window,
    c_window: &[GradedElement],
    core_window: &[GradedElement],
) -> (IdealClass, ClosureResult) {
    let idx = WindowIndex::new(alg, window);
    let closure = ideal_closure_at_window(alg, generators, window);
    let mut c_space = EchelonSpace::new();
    for v in c_window {
        c_space.insert(&idx.to_vec(v));
    }
    let inside_c = closure.basis.iter().all(|v| c_space.contains_vec(&idx.to_vec(v)));
    if inside_c {
        let class = if closure.complete { IdealClass::SubsetOfC } else { IdealClass::Inconclusive };
        return (class, closure);
    }
    let mut closure_space = EchelonSpace::new();
    for v in &closure.basis {
        closure_space.insert(&idx.to_vec(v));
    }
    let contains_core = core_window.iter().all(|v| closure_space.contains_vec(&idx.to_vec(v)));
    let class = if contains_core { IdealClass::ContainsCore } else { IdealClass::Inconclusive };
    (class, closure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glie::GradedLieAlgebra;
    use crate::multiloop::untwisted;
    use crate::rootsys::{build_root_system, build_simple_algebra, Series};
    use alloc::string::String;

    fn sl2_loop() -> crate::multiloop::MultiloopAlgebra {
        let base = build_simple_algebra(&build_root_system(Series::A, 1).unwrap()).unwrap();
        untwisted(&base, 1)
    }

    fn deg(v: &[i64]) -> Degree {
        Degree(v.to_vec())
    }

    /// Adapter flipping the sign of one bracket entry; Jacobi must fail.
    struct Corrupted<'a> {
        inner: &'a crate::multiloop::MultiloopAlgebra,
    }

    impl GradedLieAlgebra for Corrupted<'_> {
        fn nullity(&self) -> usize {
            self.inner.nullity()
        }
        fn dim_at(&self, d: &Degree) -> usize {
            self.inner.dim_at(d)
        }
        fn slot_label(&self, d: &Degree, s: usize) -> String {
            self.inner.slot_label(d, s)
        }
        fn bracket_basis(&self, d1: &Degree, s1: usize, d2: &Degree, s2: usize) -> GradedElement {
            let out = self.inner.bracket_basis(d1, s1, d2, s2);
            // Flip [f, e]-type brackets only (slots 1 and 2), breaking
            // antisymmetry against the untouched (2, 1) entry.
            if s1 == 1 && s2 == 2 {
                out.neg()
            } else {
                out
            }
        }
    }

    #[test]
    fn corrupted_table_fails_jacobi_with_witness() {
        let ml = sl2_loop();
        let bad = Corrupted { inner: &ml };
        let mut rng = crate::sampling::DetRng::new(0);
        match jacobi_check(&bad, Window::new(1, 2), 400, &mut rng) {
            JacobiOutcome::Fail { triple, witness } => {
                assert!(!witness.is_empty());
                assert_eq!(triple.len(), 3);
            }
            JacobiOutcome::Pass { .. } => panic!("corrupted bracket passed"),
        }
    }

    #[test]
    fn centralizer_of_cartan_is_the_zero_weight_part() {
        let ml = sl2_loop();
        let h = ml.element_from_base(&deg(&[0]), &ml.base.basis_vec(0));
        let window = Window::new(1, 2);
        let basis = centralizer_at_window(&ml, &[h], window);
        // span{ h tensor t^m : |m| <= 2 }
        assert_eq!(basis.len(), 5);
        for v in &basis {
            for (_, slot) in v.terms.keys() {
                assert_eq!(*slot, 0, "only the Cartan slot commutes with h");
            }
        }
    }

    #[test]
    fn centre_of_a_centreless_torus_is_zero() {
        let ml = sl2_loop();
        let window = Window::new(1, 2);
        let generators = window_basis(&ml, window);
        let centre = centralizer_at_window(&ml, &generators, window);
        assert!(centre.is_empty());
    }

    #[test]
    fn centralizer_of_nothing_is_everything() {
        let ml = sl2_loop();
        let window = Window::new(1, 1);
        let basis = centralizer_at_window(&ml, &[], window);
        assert_eq!(basis.len(), 9);
    }

    #[test]
    fn closure_of_a_root_vector_reaches_the_triple() {
        let ml = sl2_loop();
        let window = Window::new(1, 2);
        let e = ml.element_from_base(&deg(&[0]), &ml.base.basis_vec(ml.base.root_slot(&[1])));
        let result = ideal_closure_at_window(&ml, &[e], window);
        assert!(result.complete);
        let idx = WindowIndex::new(&ml, window);
        let mut space = crate::exactnum::EchelonSpace::new();
        for v in &result.basis {
            space.insert(&idx.to_vec(v));
        }
        let h = ml.element_from_base(&deg(&[0]), &ml.base.basis_vec(0));
        let f = ml.element_from_base(&deg(&[0]), &ml.base.basis_vec(ml.base.root_slot(&[-1])));
        assert!(space.contains_vec(&idx.to_vec(&h)));
        assert!(space.contains_vec(&idx.to_vec(&f)));
    }

    #[test]
    fn closure_of_zero_is_zero() {
        let ml = sl2_loop();
        let result = ideal_closure_at_window(&ml, &[GradedElement::zero()], Window::new(1, 1));
        assert!(result.complete);
        assert!(result.basis.is_empty());
    }

    #[test]
    fn foreign_elements_are_detected() {
        let ml = sl2_loop();
        let bad = GradedElement::single(deg(&[0]), 7, Scalar::one());
        assert!(check_element(&ml, &bad).is_err());
        let good = GradedElement::single(deg(&[0]), 2, Scalar::one());
        assert!(check_element(&ml, &good).is_ok());
    }
}
