//! Root decomposition of `E` under `H = h + C^0 + D^0` and the
//! anisotropic/isotropic partition.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use num_traits::Zero;

use crate::exactnum::{Rat, Scalar, Solver, SparseMatrix, SparseVec};
use crate::glie::{bracket, Degree, GradedElement, GradedLieAlgebra, Window};
use crate::multiloop::weight_spaces_at;

use super::structure::{EalaStructure, Part};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootsError {
    /// A window basis vector is not a joint eigenvector (witness label).
    NotToral(String),
    FormDegenerateOnH,
}

impl fmt::Display for RootsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootsError::NotToral(w) => write!(f, "ad H is not diagonal on {}", w),
            RootsError::FormDegenerateOnH => write!(f, "invariant form degenerate on H"),
        }
    }
}

/// One root `psi = (alpha, lambda)` of `(E, H)` with its window basis.
#[derive(Clone, Debug)]
pub struct EalaRoot {
    /// `alpha` as a functional on the fixed Cartan of `L`.
    pub weight: Vec<Rat>,
    /// `lambda`, the degree part.
    pub degree: Degree,
    /// Values of the functional on the full `H`-basis (Cartan order).
    pub h_values: Vec<Scalar>,
    pub basis: Vec<GradedElement>,
}

impl EalaRoot {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero_root(&self) -> bool {
        self.weight.iter().all(|c| c.is_zero()) && self.degree.is_zero()
    }

    pub fn finite_part_is_zero(&self) -> bool {
        self.weight.iter().all(|c| c.is_zero())
    }
}

#[derive(Clone, Debug)]
pub struct RootDecomposition {
    pub roots: Vec<EalaRoot>,
    pub window: Window,
}

impl RootDecomposition {
    pub fn find(&self, weight: &[Rat], degree: &Degree) -> Option<&EalaRoot> {
        self.roots.iter().find(|r| r.weight == weight && &r.degree == degree)
    }
}

/// Decompose the window part of `E` into joint eigenspaces of `ad H`.
/// Every window basis vector must land in one of them.
pub fn root_decomposition(
    e: &EalaStructure,
    window: Window,
) -> Result<RootDecomposition, RootsError> {
    let h_basis = e.cartan_basis();
    let hdim = h_basis.len();
    let n = e.ml.nullity;
    let l_cartan = e.ml.cartan_dim();
    let mut roots: Vec<EalaRoot> = Vec::new();

    for deg in window.degrees() {
        let mut at_degree: Vec<(Vec<Rat>, Vec<GradedElement>)> = weight_spaces_at(&e.ml, &deg)
            .into_iter()
            .map(|(w, elems)| (w, elems.into_iter().map(|x| e.embed_l(&x)).collect()))
            .collect();
        // C^deg and D^deg attach to the zero finite part.
        let mut cd: Vec<GradedElement> = Vec::new();
        for slot in 0..e.dim_at(&deg) {
            match e.part_of(&deg, slot) {
                Part::C(_) | Part::D(_) => {
                    cd.push(GradedElement::single(deg.clone(), slot, Scalar::one()))
                }
                Part::L(_) => {}
            }
        }
        if !cd.is_empty() {
            let zero_w = alloc::vec![Rat::zero(); l_cartan];
            if let Some(entry) = at_degree.iter_mut().find(|(w, _)| *w == zero_w) {
                entry.1.extend(cd);
            } else {
                at_degree.push((zero_w, cd));
            }
        }
        for (w, basis) in at_degree {
            if basis.is_empty() {
                continue;
            }
            // Functional on the H basis: the weight on h, zero on C^0, the
            // degree evaluation on D^0.
            let mut h_values: Vec<Scalar> =
                w.iter().map(|r| Scalar::from_rat(r.clone())).collect();
            let zero_deg = Degree::zero(n);
            for _ in e.da.c_indices_at(&zero_deg) {
                h_values.push(Scalar::zero());
            }
            for k in e.da.d_indices_at(&zero_deg) {
                let theta = &e.da.basis[k].1;
                h_values.push(Scalar::from_rat(theta.eval(&deg)));
            }
            debug_assert_eq!(h_values.len(), hdim);
            // Exact eigenvector verification.
            for v in &basis {
                for (k, h) in h_basis.iter().enumerate() {
                    let got = bracket(e, h, v);
                    let want = v.scale(&h_values[k]);
                    if got != want {
                        return Err(RootsError::NotToral(format!(
                            "H basis {} on {}",
                            k,
                            v.render(e)
                        )));
                    }
                }
            }
            roots.push(EalaRoot { weight: w, degree: deg.clone(), h_values, basis });
        }
    }
    Ok(RootDecomposition { roots, window })
}

#[derive(Clone, Debug)]
pub struct ClassifiedRoots {
    /// Indices into the decomposition, partitioned by the norm.
    pub anisotropic: Vec<usize>,
    pub isotropic: Vec<usize>,
    pub norms: Vec<Scalar>,
    /// Coordinates of each `t_psi` over the `H`-basis.
    pub t_vectors: Vec<Vec<Scalar>>,
}

impl ClassifiedRoots {
    /// `(psi | psi') = psi'(t_psi)`.
    pub fn pair(&self, dec: &RootDecomposition, i: usize, j: usize) -> Scalar {
        let mut acc = Scalar::zero();
        for (k, t) in self.t_vectors[i].iter().enumerate() {
            acc = acc.add(&t.mul(&dec.roots[j].h_values[k]));
        }
        acc
    }
}

/// Solve `(t_psi | h) = psi(h)` on the `H`-basis and partition the roots by
/// the induced norm.
pub fn classify_roots(
    e: &EalaStructure,
    dec: &RootDecomposition,
) -> Result<ClassifiedRoots, RootsError> {
    let h_basis = e.cartan_basis();
    let hdim = h_basis.len();
    let mut gram = SparseMatrix::new(hdim, hdim);
    for i in 0..hdim {
        for j in 0..hdim {
            gram.set(i, j, e.form(&h_basis[i], &h_basis[j]));
        }
    }
    if gram.rank() != hdim {
        return Err(RootsError::FormDegenerateOnH);
    }
    let solver = Solver::new(&gram);
    let mut anisotropic = Vec::new();
    let mut isotropic = Vec::new();
    let mut norms = Vec::new();
    let mut t_vectors = Vec::new();
    for (i, root) in dec.roots.iter().enumerate() {
        let mut rhs = SparseVec::new();
        for (k, v) in root.h_values.iter().enumerate() {
            if !v.is_zero() {
                rhs.insert(k, v.clone());
            }
        }
        let t = solver.solve(&rhs).ok_or(RootsError::FormDegenerateOnH)?;
        let coords: Vec<Scalar> =
            (0..hdim).map(|k| t.get(&k).cloned().unwrap_or_else(Scalar::zero)).collect();
        let mut norm = Scalar::zero();
        for (k, c) in coords.iter().enumerate() {
            norm = norm.add(&c.mul(&root.h_values[k]));
        }
        if norm.is_zero() {
            isotropic.push(i);
        } else {
            anisotropic.push(i);
        }
        norms.push(norm);
        t_vectors.push(coords);
    }
    Ok(ClassifiedRoots { anisotropic, isotropic, norms, t_vectors })
}
