//! Degree derivations and skew-centroidal derivations.
//!
//! A homogeneous centroidal derivation is `chi^xi d_theta` with
//! `theta in Hom(Lambda, k)` carried as a rational vector; it scales the
//! degree-`lambda` slice by `theta(lambda)` and shifts the degree by `xi`.
//! The skew ones satisfy `theta(xi) = 0`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactnum::{Rat, Scalar, Solver, SparseMatrix, SparseVec};
use crate::glie::{Degree, GradedElement};

/// `theta in Hom(Lambda, k)` by its values on the standard basis.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct HomWeight(pub Vec<Rat>);

impl HomWeight {
    pub fn zero(n: usize) -> Self {
        HomWeight(alloc::vec![Rat::zero(); n])
    }

    pub fn standard(n: usize, k: usize) -> Self {
        let mut v = alloc::vec![Rat::zero(); n];
        v[k] = Rat::one();
        HomWeight(v)
    }

    pub fn from_ints(v: &[i64]) -> Self {
        HomWeight(v.iter().map(|&c| Rat::from_integer(BigInt::from(c))).collect())
    }

    pub fn eval(&self, deg: &Degree) -> Rat {
        self.0
            .iter()
            .zip(&deg.0)
            .map(|(t, &l)| t * Rat::from_integer(BigInt::from(l)))
            .fold(Rat::zero(), |a, b| a + b)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &HomWeight) -> HomWeight {
        HomWeight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &Rat) -> HomWeight {
        HomWeight(self.0.iter().map(|a| a * c).collect())
    }
}

impl fmt::Display for HomWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, "]")
    }
}

/// A finite sum of homogeneous centroidal derivations, at most one term per
/// degree (same-degree terms merge by adding weights).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentroidalDerivation {
    pub terms: BTreeMap<Degree, HomWeight>,
}

impl CentroidalDerivation {
    pub fn single(xi: Degree, theta: HomWeight) -> Self {
        let mut terms = BTreeMap::new();
        if !theta.is_zero() {
            terms.insert(xi, theta);
        }
        CentroidalDerivation { terms }
    }

    pub fn degree_derivation(theta: HomWeight) -> Self {
        let n = theta.0.len();
        CentroidalDerivation::single(Degree::zero(n), theta)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Skew with respect to the graded invariant form: `theta(xi) = 0`
    /// termwise.
    pub fn is_skew(&self) -> bool {
        self.terms.iter().all(|(xi, theta)| theta.eval(xi).is_zero())
    }

    pub fn add(&self, other: &CentroidalDerivation) -> CentroidalDerivation {
        let mut terms = self.terms.clone();
        for (xi, theta) in &other.terms {
            let merged = match terms.get(xi) {
                Some(cur) => cur.add(theta),
                None => theta.clone(),
            };
            if merged.is_zero() {
                terms.remove(xi);
            } else {
                terms.insert(xi.clone(), merged);
            }
        }
        CentroidalDerivation { terms }
    }

    pub fn scale(&self, c: &Rat) -> CentroidalDerivation {
        if c.is_zero() {
            return CentroidalDerivation { terms: BTreeMap::new() };
        }
        CentroidalDerivation {
            terms: self.terms.iter().map(|(xi, t)| (xi.clone(), t.scale(c))).collect(),
        }
    }

    /// Apply to a graded element: each term scales a degree-`lambda`
    /// component by `theta(lambda)` and shifts it to `lambda + xi`. Slots are
    /// untouched because `xi` preserves residue classes.
    pub fn apply(&self, x: &GradedElement) -> GradedElement {
        let mut out = GradedElement::zero();
        for (xi, theta) in &self.terms {
            for ((lambda, slot), c) in &x.terms {
                let t = theta.eval(lambda);
                if t.is_zero() {
                    continue;
                }
                out.add_term(lambda.add(xi), *slot, &c.mul(&Scalar::from_rat(t)));
            }
        }
        out
    }
}

/// `[chi^xi d_theta, chi^delta d_psi] =
///  chi^(xi+delta) (theta(delta) d_psi - psi(xi) d_theta)`,
/// extended bilinearly.
pub fn der_bracket(a: &CentroidalDerivation, b: &CentroidalDerivation) -> CentroidalDerivation {
    let mut out = CentroidalDerivation { terms: BTreeMap::new() };
    for (xi, theta) in &a.terms {
        for (delta, psi) in &b.terms {
            let td = theta.eval(delta);
            let px = psi.eval(xi);
            let weight = psi.scale(&td).add(&theta.scale(&-px));
            if weight.is_zero() {
                continue;
            }
            out = out.add(&CentroidalDerivation::single(xi.add(delta), weight));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DercocError {
    /// Generator `idx` violates `theta(xi) = 0`.
    NotSkew(usize),
    /// Generator `idx` has degree outside the central grading subgroup.
    DegreeOutsideXi(usize),
    /// Bracket closure produced a derivation outside the degree bound.
    ClosureUnbounded(Degree),
    /// The evaluation map of `D^0` on the lattice is not injective.
    EvNotInjective,
}

impl fmt::Display for DercocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DercocError::NotSkew(i) => write!(f, "extra generator {} is not skew", i),
            DercocError::DegreeOutsideXi(i) => {
                write!(f, "extra generator {} has degree outside the centroid grading", i)
            }
            DercocError::ClosureUnbounded(d) => {
                write!(f, "bracket closure escapes the degree bound at {}", d)
            }
            DercocError::EvNotInjective => {
                write!(f, "evaluation of D^0 on the degree lattice is not injective")
            }
        }
    }
}

/// The chosen graded subalgebra `D` of the skew-centroidal derivations,
/// with its graded dual `C` represented by the dual basis: the `k`-th
/// `C`-basis vector is the functional dual to the `k`-th `D`-basis vector
/// and lives in the opposite degree.
#[derive(Clone, Debug)]
pub struct DAlgebra {
    pub nullity: usize,
    /// Automorphism orders; homogeneous degrees of `D` must be multiples.
    pub orders: Vec<u32>,
    pub degree_bound: i64,
    /// Basis, sorted by (degree, insertion); entries are `(xi, theta)`.
    pub basis: Vec<(Degree, HomWeight)>,
    per_degree: BTreeMap<Degree, Vec<usize>>,
    solvers: BTreeMap<Degree, Solver>,
}

pub const DEFAULT_DEGREE_BOUND: i64 = 4;

/// Assemble `D` as the standard degree derivations plus the closure of the
/// extra generators under the derivation bracket.
pub fn build_d_algebra(
    nullity: usize,
    orders: &[u32],
    extra: &[(Degree, HomWeight)],
    degree_bound: i64,
) -> Result<DAlgebra, DercocError> {
    assert_eq!(orders.len(), nullity);
    for (i, (xi, theta)) in extra.iter().enumerate() {
        assert_eq!(xi.len(), nullity);
        assert_eq!(theta.0.len(), nullity);
        if xi.0.iter().zip(orders).any(|(&l, &m)| l % m as i64 != 0) {
            return Err(DercocError::DegreeOutsideXi(i));
        }
        if !theta.eval(xi).is_zero() {
            return Err(DercocError::NotSkew(i));
        }
    }

    // Per-degree weight spans, degree 0 seeded with the full standard basis.
    let mut spans: BTreeMap<Degree, Vec<HomWeight>> = BTreeMap::new();
    let zero = Degree::zero(nullity);
    let std_basis: Vec<HomWeight> = (0..nullity).map(|k| HomWeight::standard(nullity, k)).collect();
    spans.insert(zero.clone(), std_basis);
    let mut worklist: Vec<(Degree, HomWeight)> = extra.to_vec();
    while let Some((xi, theta)) = worklist.pop() {
        if !insert_weight(&mut spans, &xi, &theta) {
            continue;
        }
        if xi.sup_norm() > degree_bound {
            return Err(DercocError::ClosureUnbounded(xi));
        }
        // Bracket the new generator against everything present.
        let new_der = CentroidalDerivation::single(xi.clone(), theta.clone());
        let snapshot: Vec<(Degree, HomWeight)> = spans
            .iter()
            .flat_map(|(d, ws)| ws.iter().map(move |w| (d.clone(), w.clone())))
            .collect();
        for (d, w) in snapshot {
            let other = CentroidalDerivation::single(d, w);
            for cand in [der_bracket(&new_der, &other), der_bracket(&other, &new_der)] {
                for (cd, cw) in cand.terms {
                    worklist.push((cd, cw));
                }
            }
        }
    }

    let mut basis: Vec<(Degree, HomWeight)> = Vec::new();
    let mut per_degree: BTreeMap<Degree, Vec<usize>> = BTreeMap::new();
    for (d, ws) in &spans {
        for w in ws {
            per_degree.entry(d.clone()).or_default().push(basis.len());
            basis.push((d.clone(), w.clone()));
        }
    }
    let mut solvers = BTreeMap::new();
    for (d, idxs) in &per_degree {
        let mut m = SparseMatrix::new(nullity, idxs.len());
        for (col, &bi) in idxs.iter().enumerate() {
            for (row, c) in basis[bi].1 .0.iter().enumerate() {
                if !c.is_zero() {
                    m.set(row, col, Scalar::from_rat(c.clone()));
                }
            }
        }
        solvers.insert(d.clone(), Solver::new(&m));
    }

    let da = DAlgebra { nullity, orders: orders.to_vec(), degree_bound, basis, per_degree, solvers };
    // ev restricted to D^0 must separate the lattice. D^0 contains the
    // standard basis, so this is a consistency check.
    let d0 = da.d_indices_at(&zero);
    let mut m = SparseMatrix::new(d0.len(), nullity);
    for (r, &bi) in d0.iter().enumerate() {
        for (c, v) in da.basis[bi].1 .0.iter().enumerate() {
            if !v.is_zero() {
                m.set(r, c, Scalar::from_rat(v.clone()));
            }
        }
    }
    if m.rank() != nullity {
        return Err(DercocError::EvNotInjective);
    }
    Ok(da)
}

/// Returns true when the weight was independent (and inserted).
fn insert_weight(spans: &mut BTreeMap<Degree, Vec<HomWeight>>, xi: &Degree, theta: &HomWeight) -> bool {
    if theta.is_zero() {
        return false;
    }
    let ws = spans.entry(xi.clone()).or_default();
    // Rational elimination against the current span.
    let mut v = theta.clone();
    for w in ws.iter() {
        let lead = w.0.iter().position(|c| !c.is_zero()).expect("span vectors nonzero");
        if !v.0[lead].is_zero() {
            let factor = v.0[lead].clone() / w.0[lead].clone();
            v = v.add(&w.scale(&-factor));
        }
    }
    if v.is_zero() {
        return false;
    }
    ws.push(v);
    true
}

impl DAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn support(&self) -> Vec<Degree> {
        self.per_degree.keys().cloned().collect()
    }

    pub fn d_indices_at(&self, deg: &Degree) -> Vec<usize> {
        self.per_degree.get(deg).cloned().unwrap_or_default()
    }

    /// `C^deg = (D^(-deg))^*`: indices of the dual basis vectors at `deg`.
    pub fn c_indices_at(&self, deg: &Degree) -> Vec<usize> {
        self.d_indices_at(&deg.neg())
    }

    pub fn dim_d_at(&self, deg: &Degree) -> usize {
        self.per_degree.get(deg).map(|v| v.len()).unwrap_or(0)
    }

    pub fn dim_c_at(&self, deg: &Degree) -> usize {
        self.dim_d_at(&deg.neg())
    }

    pub fn derivation(&self, idx: usize) -> CentroidalDerivation {
        let (xi, theta) = &self.basis[idx];
        CentroidalDerivation::single(xi.clone(), theta.clone())
    }

    pub fn degree_of(&self, idx: usize) -> &Degree {
        &self.basis[idx].0
    }

    /// Express a homogeneous weight at `deg` over the basis of `D^deg`.
    pub fn coordinatize(&self, deg: &Degree, theta: &HomWeight) -> Option<Vec<(usize, Rat)>> {
        if theta.is_zero() {
            return Some(Vec::new());
        }
        let solver = self.solvers.get(deg)?;
        let mut b = SparseVec::new();
        for (k, c) in theta.0.iter().enumerate() {
            if !c.is_zero() {
                b.insert(k, Scalar::from_rat(c.clone()));
            }
        }
        let x = solver.solve(&b)?;
        let idxs = &self.per_degree[deg];
        Some(
            x.into_iter()
                .map(|(col, c)| (idxs[col], c.as_rat().expect("rational derivation coordinates")))
                .collect(),
        )
    }

    /// `[d_i, d_j]` over the basis.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<(usize, Rat)> {
        let out = der_bracket(&self.derivation(i), &self.derivation(j));
        let mut coords = Vec::new();
        for (deg, theta) in out.terms {
            let cs = self
                .coordinatize(&deg, &theta)
                .expect("closure keeps brackets inside D");
            coords.extend(cs);
        }
        coords.sort_by_key(|&(i, _)| i);
        coords
    }

    /// Contragredient action on the dual basis:
    /// `(d_i . c_j)(d_k) = -c_j([d_i, d_k])`.
    pub fn act_on_dual(&self, i: usize, j: usize) -> Vec<(usize, Rat)> {
        // Result lives in degree xi_i - xi_j (as a C-vector), i.e. its dual
        // D-degree is xi_j - xi_i.
        let target = self.basis[j].0.sub(&self.basis[i].0);
        let mut out = Vec::new();
        for k in self.d_indices_at(&target) {
            let br = self.bracket_basis(i, k);
            for (idx, c) in br {
                if idx == j && !c.is_zero() {
                    out.push((k, -c.clone()));
                }
            }
        }
        out.sort_by_key(|&(k, _)| k);
        out
    }
}
