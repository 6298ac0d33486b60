//! The assembled algebra `E = L + C + D` with the standard product, Cartan
//! `H = h + C^0 + D^0`, and invariant form.
//!
//! Per degree `lambda` the basis slots are laid out as the `L^lambda`
//! eigenbasis, then the dual basis of `D^(-lambda)` (the `C^lambda` part),
//! then the basis of `D^lambda`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::dercoc::{
    sigma_d, validate_affine_cocycle, AffineCocycle, CElement, CocycleViolation, DAlgebra,
};
use crate::exactnum::Scalar;
use crate::glie::{Degree, GradedElement, GradedLieAlgebra, Window};
use crate::multiloop::MultiloopAlgebra;
use num_traits::Zero;

#[derive(Clone, Debug)]
pub struct EalaStructure {
    pub ml: MultiloopAlgebra,
    pub da: DAlgebra,
    pub tau: AffineCocycle,
}

/// Where a basis slot of `E` lives; `C` and `D` parts carry the global
/// index into the `D`-basis (for `C`, of the dualized vector).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Part {
    L(usize),
    C(usize),
    D(usize),
}

pub fn assemble_eala(
    ml: MultiloopAlgebra,
    da: DAlgebra,
    tau: AffineCocycle,
) -> Result<EalaStructure, CocycleViolation> {
    assert_eq!(ml.nullity, da.nullity, "derivation algebra over the wrong lattice");
    for (deg, _) in &da.basis {
        assert!(
            ml.in_xi(deg) || ml.orders.iter().all(|&m| m == 1),
            "derivation degree outside the centroid grading"
        );
    }
    validate_affine_cocycle(&da, &tau)?;
    Ok(EalaStructure { ml, da, tau })
}

impl EalaStructure {
    pub fn dim_l_at(&self, deg: &Degree) -> usize {
        self.ml.dim_residue(&self.ml.residue_of(deg))
    }

    pub fn part_of(&self, deg: &Degree, slot: usize) -> Part {
        let l = self.dim_l_at(deg);
        if slot < l {
            return Part::L(slot);
        }
        let c = self.da.c_indices_at(deg);
        if slot < l + c.len() {
            return Part::C(c[slot - l]);
        }
        let d = self.da.d_indices_at(deg);
        Part::D(d[slot - l - c.len()])
    }

    /// Slot of the functional dual to the `k`-th `D`-basis vector.
    pub fn c_slot(&self, k: usize) -> (Degree, usize) {
        let deg = self.da.degree_of(k).neg();
        let pos = self
            .da
            .c_indices_at(&deg)
            .iter()
            .position(|&i| i == k)
            .expect("dual index present");
        (deg.clone(), self.dim_l_at(&deg) + pos)
    }

    pub fn d_slot(&self, k: usize) -> (Degree, usize) {
        let deg = self.da.degree_of(k).clone();
        let pos = self
            .da
            .d_indices_at(&deg)
            .iter()
            .position(|&i| i == k)
            .expect("basis index present");
        let l = self.dim_l_at(&deg);
        let c = self.da.dim_c_at(&deg);
        (deg, l + c + pos)
    }

    /// View an element of `L` inside `E` (slots coincide on the `L`-part).
    pub fn embed_l(&self, x: &GradedElement) -> GradedElement {
        let mut out = GradedElement::zero();
        for ((d, s), c) in &x.terms {
            debug_assert!(*s < self.dim_l_at(d));
            out.add_term(d.clone(), *s, c);
        }
        out
    }

    pub fn embed_c(&self, c: &CElement) -> GradedElement {
        let mut out = GradedElement::zero();
        for (&k, v) in c {
            let (deg, slot) = self.c_slot(k);
            out.add_term(deg, slot, v);
        }
        out
    }

    pub fn embed_d(&self, coords: &[(usize, Scalar)]) -> GradedElement {
        let mut out = GradedElement::zero();
        for (k, v) in coords {
            let (deg, slot) = self.d_slot(*k);
            out.add_term(deg, slot, v);
        }
        out
    }

    /// The `L`-component as an element of the multiloop algebra.
    pub fn l_component(&self, x: &GradedElement) -> GradedElement {
        let mut out = GradedElement::zero();
        for ((d, s), c) in &x.terms {
            if matches!(self.part_of(d, *s), Part::L(_)) {
                out.add_term(d.clone(), *s, c);
            }
        }
        out
    }

    /// The `C`-component over the global dual basis.
    pub fn c_component(&self, x: &GradedElement) -> CElement {
        let mut out = CElement::new();
        for ((d, s), c) in &x.terms {
            if let Part::C(k) = self.part_of(d, *s) {
                out.insert(k, c.clone());
            }
        }
        out
    }

    /// The `D`-component over the global basis.
    pub fn d_component(&self, x: &GradedElement) -> Vec<(usize, Scalar)> {
        let mut out = Vec::new();
        for ((d, s), c) in &x.terms {
            if let Part::D(k) = self.part_of(d, *s) {
                out.push((k, c.clone()));
            }
        }
        out
    }

    /// Basis of `H = h + C^0 + D^0` as elements of `E`.
    pub fn cartan_basis(&self) -> Vec<GradedElement> {
        let mut out = Vec::new();
        for k in 0..self.ml.cartan_dim() {
            out.push(self.embed_l(&self.ml.cartan_element(k)));
        }
        let zero = Degree::zero(self.ml.nullity);
        for k in self.da.c_indices_at(&zero) {
            let mut c = CElement::new();
            c.insert(k, Scalar::one());
            out.push(self.embed_c(&c));
        }
        for k in self.da.d_indices_at(&zero) {
            out.push(self.embed_d(&[(k, Scalar::one())]));
        }
        out
    }

    pub fn cartan_dim(&self) -> usize {
        self.ml.cartan_dim() + self.da.dim_c_at(&Degree::zero(self.ml.nullity)) + self.da.dim_d_at(&Degree::zero(self.ml.nullity))
    }

    /// The invariant form
    /// `(l1 + c1 + d1 | l2 + c2 + d2) = (l1|l2)_L + c1(d2) + c2(d1)`.
    pub fn form(&self, x: &GradedElement, y: &GradedElement) -> Scalar {
        let lx = self.l_component(x);
        let ly = self.l_component(y);
        let mut acc = crate::dercoc::form_l(&self.ml, &lx, &ly);
        let cx = self.c_component(x);
        let cy = self.c_component(y);
        for (k, v) in self.d_component(y) {
            if let Some(c) = cx.get(&k) {
                acc = acc.add(&c.mul(&v));
            }
        }
        for (k, v) in self.d_component(x) {
            if let Some(c) = cy.get(&k) {
                acc = acc.add(&c.mul(&v));
            }
        }
        acc
    }

    /// Window basis of the core candidate `L + C`.
    pub fn l_plus_c_window(&self, window: Window) -> Vec<GradedElement> {
        let mut out = Vec::new();
        for deg in window.degrees() {
            for slot in 0..self.dim_at(&deg) {
                match self.part_of(&deg, slot) {
                    Part::L(_) | Part::C(_) => {
                        out.push(GradedElement::single(deg.clone(), slot, Scalar::one()))
                    }
                    Part::D(_) => {}
                }
            }
        }
        out
    }

    /// Window basis of the centre candidate `C`.
    pub fn c_window(&self, window: Window) -> Vec<GradedElement> {
        let mut out = Vec::new();
        for deg in window.degrees() {
            for slot in 0..self.dim_at(&deg) {
                if matches!(self.part_of(&deg, slot), Part::C(_)) {
                    out.push(GradedElement::single(deg.clone(), slot, Scalar::one()));
                }
            }
        }
        out
    }
}

impl GradedLieAlgebra for EalaStructure {
    fn nullity(&self) -> usize {
        self.ml.nullity
    }

    fn dim_at(&self, degree: &Degree) -> usize {
        self.dim_l_at(degree) + self.da.dim_c_at(degree) + self.da.dim_d_at(degree)
    }

    fn slot_label(&self, degree: &Degree, slot: usize) -> String {
        match self.part_of(degree, slot) {
            Part::L(s) => self.ml.slot_label(degree, s),
            Part::C(k) => format!("C{}", k),
            Part::D(k) => format!("D{}", k),
        }
    }

    fn bracket_basis(&self, d1: &Degree, s1: usize, d2: &Degree, s2: usize) -> GradedElement {
        let p1 = self.part_of(d1, s1);
        let p2 = self.part_of(d2, s2);
        match (p1, p2) {
            (Part::L(a), Part::L(b)) => {
                let mut out = self.embed_l(&self.ml.bracket_basis(d1, a, d2, b));
                // Central term sigma_D(l1, l2)(d) = (d(l1) | l2): with
                // homogeneous arguments only duals of matching degree
                // survive.
                let r1 = self.ml.residue_of(d1);
                let r2 = self.ml.residue_of(d2);
                let kappa = self.ml.kappa_slots(&r1, a, &r2, b);
                if !kappa.is_zero() {
                    let minus = d1.add(d2).neg();
                    for k in self.da.d_indices_at(&minus) {
                        let theta = &self.da.basis[k].1;
                        let t = theta.eval(d1);
                        if !t.is_zero() {
                            let (deg, slot) = self.c_slot(k);
                            out.add_term(deg, slot, &kappa.mul(&Scalar::from_rat(t)));
                        }
                    }
                }
                out
            }
            (Part::L(_), Part::C(_)) | (Part::C(_), Part::L(_)) | (Part::C(_), Part::C(_)) => {
                GradedElement::zero()
            }
            (Part::D(k), Part::L(b)) => {
                let l = GradedElement::single(d2.clone(), b, Scalar::one());
                self.embed_l(&self.da.derivation(k).apply(&l))
            }
            (Part::L(a), Part::D(k)) => {
                let l = GradedElement::single(d1.clone(), a, Scalar::one());
                self.embed_l(&self.da.derivation(k).apply(&l)).neg()
            }
            (Part::D(k), Part::C(j)) => {
                let mut c = CElement::new();
                for (idx, r) in self.da.act_on_dual(k, j) {
                    c.insert(idx, Scalar::from_rat(r));
                }
                self.embed_c(&c)
            }
            (Part::C(j), Part::D(k)) => {
                let mut c = CElement::new();
                for (idx, r) in self.da.act_on_dual(k, j) {
                    c.insert(idx, Scalar::from_rat(r));
                }
                self.embed_c(&c).neg()
            }
            (Part::D(k), Part::D(m)) => {
                let mut out = self.embed_c(&self.tau.eval(k, m));
                let coords: Vec<(usize, Scalar)> = self
                    .da
                    .bracket_basis(k, m)
                    .into_iter()
                    .map(|(i, r)| (i, Scalar::from_rat(r)))
                    .collect();
                out.add_scaled(&self.embed_d(&coords), &Scalar::one());
                out
            }
        }
    }
}

/// `sigma_D` of two arbitrary elements of `L`, embedded into `E`.
pub fn sigma_into_e(e: &EalaStructure, x: &GradedElement, y: &GradedElement) -> GradedElement {
    e.embed_c(&sigma_d(&e.da, &e.ml, x, y))
}
