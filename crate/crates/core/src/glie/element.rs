//! Degrees, windows, and finitely supported graded elements.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::exactnum::{Scalar, SparseVec};

use super::GradedLieAlgebra;

/// A degree `lambda` in `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Degree(pub Vec<i64>);

impl Degree {
    pub fn zero(n: usize) -> Self {
        Degree(alloc::vec![0; n])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Degree {
        Degree(self.0.iter().map(|&a| -a).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sup_norm(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

/// The box `{lambda : |lambda_i| <= bound}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub nullity: usize,
    pub bound: i64,
}

impl Window {
    pub fn new(nullity: usize, bound: i64) -> Self {
        assert!(bound >= 1);
        Window { nullity, bound }
    }

    pub fn contains(&self, d: &Degree) -> bool {
        d.sup_norm() <= self.bound
    }

    /// All degrees of the box in lexicographic order.
    pub fn degrees(&self) -> Vec<Degree> {
        let mut out = Vec::new();
        let mut cur = alloc::vec![-self.bound; self.nullity];
        loop {
            out.push(Degree(cur.clone()));
            let mut i = self.nullity;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < self.bound {
                    cur[i] += 1;
                    for c in cur[i + 1..].iter_mut() {
                        *c = -self.bound;
                    }
                    break;
                }
            }
        }
    }
}

/// A finitely supported element: finite map (degree, slot) -> coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedElement {
    pub terms: BTreeMap<(Degree, usize), Scalar>,
}

impl GradedElement {
    pub fn zero() -> Self {
        GradedElement::default()
    }

    pub fn single(degree: Degree, slot: usize, coeff: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert((degree, slot), coeff);
        }
        GradedElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, degree: Degree, slot: usize, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        let key = (degree, slot);
        match self.terms.get_mut(&key) {
            Some(cur) => {
                let next = cur.add(coeff);
                if next.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *cur = next;
                }
            }
            None => {
                self.terms.insert(key, coeff.clone());
            }
        }
    }

    /// `self += coeff * other`
    pub fn add_scaled(&mut self, other: &GradedElement, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        for ((d, s), c) in &other.terms {
            self.add_term(d.clone(), *s, &c.mul(coeff));
        }
    }

    pub fn add(&self, other: &GradedElement) -> GradedElement {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &GradedElement) -> GradedElement {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn scale(&self, coeff: &Scalar) -> GradedElement {
        let mut out = GradedElement::zero();
        out.add_scaled(self, coeff);
        out
    }

    pub fn neg(&self) -> GradedElement {
        self.scale(&Scalar::from_int(-1))
    }

    /// Support degrees, deduplicated, in order.
    pub fn support(&self) -> Vec<Degree> {
        let mut out: Vec<Degree> = Vec::new();
        for (d, _) in self.terms.keys() {
            if out.last() != Some(d) {
                out.push(d.clone());
            }
        }
        out
    }

    /// The part of the element in one degree.
    pub fn component(&self, degree: &Degree) -> GradedElement {
        let mut out = GradedElement::zero();
        for ((d, s), c) in &self.terms {
            if d == degree {
                out.add_term(d.clone(), *s, c);
            }
        }
        out
    }

    /// Homogeneous iff supported in a single degree.
    pub fn is_homogeneous(&self) -> bool {
        self.support().len() <= 1
    }

    /// Truncate to a window.
    pub fn truncated(&self, window: &Window) -> GradedElement {
        let mut out = GradedElement::zero();
        for ((d, s), c) in &self.terms {
            if window.contains(d) {
                out.add_term(d.clone(), *s, c);
            }
        }
        out
    }

    pub fn render<A: GradedLieAlgebra + ?Sized>(&self, alg: &A) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((d, s), c)| format!("({})*{}@{}", c, alg.slot_label(d, *s), d))
            .collect();
        parts.join(" + ")
    }
}

/// Enumeration of the window basis of an algebra: a bijection between
/// `(degree, slot)` pairs inside the window and flat indices, used to turn
/// graded elements into sparse vectors for linear algebra.
#[derive(Clone, Debug)]
pub struct WindowIndex {
    pub entries: Vec<(Degree, usize)>,
    index: BTreeMap<(Degree, usize), usize>,
    pub window: Window,
}

impl WindowIndex {
    pub fn new<A: GradedLieAlgebra + ?Sized>(alg: &A, window: Window) -> Self {
        let mut entries = Vec::new();
        for d in window.degrees() {
            for slot in 0..alg.dim_at(&d) {
                entries.push((d.clone(), slot));
            }
        }
        let index = entries.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        WindowIndex { entries, index, window }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn position(&self, degree: &Degree, slot: usize) -> Option<usize> {
        self.index.get(&(degree.clone(), slot)).copied()
    }

    /// Window truncation into flat sparse coordinates.
    pub fn to_vec(&self, x: &GradedElement) -> SparseVec {
        let mut v = SparseVec::new();
        for ((d, s), c) in &x.terms {
            if let Some(i) = self.position(d, *s) {
                v.insert(i, c.clone());
            }
        }
        v
    }

    pub fn to_element(&self, v: &SparseVec) -> GradedElement {
        let mut out = GradedElement::zero();
        for (&i, c) in v {
            let (d, s) = &self.entries[i];
            out.add_term(d.clone(), *s, c);
        }
        out
    }

    pub fn basis_element(&self, i: usize) -> GradedElement {
        let (d, s) = &self.entries[i];
        GradedElement::single(d.clone(), *s, Scalar::one())
    }
}
