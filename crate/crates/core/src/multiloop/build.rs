//! The multiloop algebra `L(g, sigma)` as a graded algebra.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::exactnum::{
    image_basis, simultaneous_projector, Scalar, Solver, SparseMatrix, SparseVec,
};
use crate::glie::{Degree, GradedElement, GradedLieAlgebra};
use crate::rootsys::{check_commuting, FiniteOrderAut, SimpleLieAlgebra};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiloopError {
    NonCommuting(usize, usize),
    CartanNotPreserved(usize),
}

impl fmt::Display for MultiloopError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultiloopError::NonCommuting(i, j) => {
                write!(f, "automorphisms {} and {} do not commute", i, j)
            }
            MultiloopError::CartanNotPreserved(i) => {
                write!(f, "automorphism {} does not preserve the standard Cartan", i)
            }
        }
    }
}

#[derive(Clone, Debug)]
struct EigenSpace {
    /// Basis vectors of `g^residue` in Chevalley coordinates.
    basis: Vec<SparseVec>,
    /// Expresses vectors of the eigenspace over that basis.
    solver: Solver,
}

/// `L(g, sigma) = sum over lambda of g^(lambda mod orders) tensor z^lambda`.
///
/// The rings `R` and `S` are never materialized: `z^lambda` is pure degree
/// bookkeeping, and the subgroup `Xi = m_1 Z + ... + m_n Z` together with the
/// quotient `Gamma = Lambda/Xi` is derived from the automorphism orders.
/// Key addressing a pair of eigenbasis slots: (residue, slot, residue, slot).
type SlotPair = (Vec<i64>, usize, Vec<i64>, usize);

#[derive(Clone, Debug)]
pub struct MultiloopAlgebra {
    pub base: SimpleLieAlgebra,
    pub auts: Vec<FiniteOrderAut>,
    pub orders: Vec<u32>,
    pub nullity: usize,
    eigen: BTreeMap<Vec<i64>, EigenSpace>,
    /// Basis of the fixed Cartan `h` in Chevalley coordinates.
    pub cartan: Vec<SparseVec>,
    /// Bracket coefficients per residue pair: brackets only depend on the
    /// degree through its residue class, so the whole structure is finite.
    bracket_table: BTreeMap<SlotPair, Vec<(usize, Scalar)>>,
    /// Killing pairings between eigenbasis vectors of opposite residues.
    kappa_table: BTreeMap<SlotPair, Scalar>,
}

pub fn build_multiloop(
    base: &SimpleLieAlgebra,
    auts: &[FiniteOrderAut],
) -> Result<MultiloopAlgebra, MultiloopError> {
    assert!(!auts.is_empty(), "at least one automorphism (possibly the identity) is required");
    if let Err((i, j)) = check_commuting(auts) {
        return Err(MultiloopError::NonCommuting(i, j));
    }
    let rank = base.rank();
    for (i, aut) in auts.iter().enumerate() {
        for col in 0..rank {
            if aut.matrix.column(col).keys().any(|&r| r >= rank) {
                return Err(MultiloopError::CartanNotPreserved(i));
            }
        }
    }
    let orders: Vec<u32> = auts.iter().map(|a| a.order).collect();
    let matrices: Vec<SparseMatrix> = auts.iter().map(|a| a.matrix.clone()).collect();

    let mut eigen = BTreeMap::new();
    let mut total = 0;
    for residue in residues(&orders) {
        let proj = simultaneous_projector(&matrices, &orders, &residue)
            .expect("validated automorphism family");
        let basis = image_basis(&proj);
        total += basis.len();
        let solver = Solver::new(&SparseMatrix::from_columns(base.dim, &basis));
        eigen.insert(residue, EigenSpace { basis, solver });
    }
    assert_eq!(total, base.dim, "eigenspaces must decompose the base algebra");

    // Fixed part of the standard Cartan.
    let mut stacked = SparseMatrix::new(rank * auts.len(), rank);
    for (k, aut) in auts.iter().enumerate() {
        for c in 0..rank {
            for (r, s) in aut.matrix.column(c) {
                debug_assert!(r < rank);
                stacked.set(k * rank + r, c, s.clone());
            }
            let cur = stacked.get(k * rank + c, c);
            stacked.set(k * rank + c, c, cur.sub(&Scalar::one()));
        }
    }
    let cartan = stacked.kernel_basis();

    let mut ml = MultiloopAlgebra {
        base: base.clone(),
        auts: auts.to_vec(),
        orders,
        nullity: auts.len(),
        eigen,
        cartan,
        bracket_table: BTreeMap::new(),
        kappa_table: BTreeMap::new(),
    };
    ml.precompute_tables();
    Ok(ml)
}

/// All residue tuples `(c_1, ..., c_n)` with `0 <= c_i < m_i`, in
/// lexicographic order.
pub fn residues(orders: &[u32]) -> Vec<Vec<i64>> {
    let mut out = alloc::vec![Vec::new()];
    for &m in orders {
        let mut next = Vec::new();
        for prefix in &out {
            for c in 0..m as i64 {
                let mut v = prefix.clone();
                v.push(c);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

impl MultiloopAlgebra {
    fn precompute_tables(&mut self) {
        let residues = residues(&self.orders);
        let mut brackets = BTreeMap::new();
        let mut kappas = BTreeMap::new();
        for r1 in &residues {
            for r2 in &residues {
                let target: Vec<i64> = r1
                    .iter()
                    .zip(r2)
                    .zip(&self.orders)
                    .map(|((a, b), &m)| (a + b).rem_euclid(m as i64))
                    .collect();
                let solver = &self.eigen[&target].solver;
                let opposite = r1
                    .iter()
                    .zip(r2)
                    .zip(&self.orders)
                    .all(|((a, b), &m)| (a + b) % m as i64 == 0);
                for (i, v) in self.eigen[r1].basis.iter().enumerate() {
                    for (j, w) in self.eigen[r2].basis.iter().enumerate() {
                        let u = self.base.bracket(v, w);
                        if !u.is_empty() {
                            let coords = solver.solve(&u).expect("bracket stays in its eigenspace");
                            let entries: Vec<(usize, Scalar)> = coords.into_iter().collect();
                            if !entries.is_empty() {
                                brackets
                                    .insert((r1.clone(), i, r2.clone(), j), entries);
                            }
                        }
                        if opposite {
                            let k = crate::rootsys::killing_pair(&self.base, v, w);
                            if !k.is_zero() {
                                kappas.insert((r1.clone(), i, r2.clone(), j), k);
                            }
                        }
                    }
                }
            }
        }
        self.bracket_table = brackets;
        self.kappa_table = kappas;
    }

    /// Killing pairing of two eigenbasis slots; zero unless the residues are
    /// opposite.
    pub fn kappa_slots(&self, r1: &[i64], s1: usize, r2: &[i64], s2: usize) -> Scalar {
        self.kappa_table
            .get(&(r1.to_vec(), s1, r2.to_vec(), s2))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn residue_of(&self, deg: &Degree) -> Vec<i64> {
        deg.0
            .iter()
            .zip(&self.orders)
            .map(|(&l, &m)| l.rem_euclid(m as i64))
            .collect()
    }

    /// Central grading subgroup `Xi` generators (the diagonal orders).
    pub fn xi_generators(&self) -> Vec<Vec<i64>> {
        let n = self.nullity;
        (0..n)
            .map(|i| {
                let mut v = alloc::vec![0i64; n];
                v[i] = self.orders[i] as i64;
                v
            })
            .collect()
    }

    /// True when `xi` lies in the central grading subgroup.
    pub fn in_xi(&self, deg: &Degree) -> bool {
        deg.0.iter().zip(&self.orders).all(|(&l, &m)| l % m as i64 == 0)
    }

    pub fn eigenbasis(&self, residue: &[i64]) -> &[SparseVec] {
        &self.eigen[residue].basis
    }

    pub fn dim_residue(&self, residue: &[i64]) -> usize {
        self.eigen[residue].basis.len()
    }

    /// Basis vector of `L^deg` in Chevalley coordinates.
    pub fn slot_vector(&self, deg: &Degree, slot: usize) -> &SparseVec {
        &self.eigen[&self.residue_of(deg)].basis[slot]
    }

    /// Express a Chevalley-coordinate vector lying in `g^(deg mod orders)`
    /// over the eigenbasis of that residue class.
    pub fn coordinatize(&self, deg: &Degree, v: &SparseVec) -> SparseVec {
        if v.is_empty() {
            return SparseVec::new();
        }
        self.eigen[&self.residue_of(deg)]
            .solver
            .solve(v)
            .expect("vector lies in its residue eigenspace")
    }

    /// Embed `v tensor z^deg` as a graded element; `v` must lie in the
    /// eigenspace of the residue of `deg`.
    pub fn element_from_base(&self, deg: &Degree, v: &SparseVec) -> GradedElement {
        let coords = self.coordinatize(deg, v);
        let mut out = GradedElement::zero();
        for (slot, c) in coords {
            out.add_term(deg.clone(), slot, &c);
        }
        out
    }

    /// The element of `L` with Chevalley-coordinate component `v` in each
    /// listed degree. Fails if some component is not in its eigenspace.
    pub fn cartan_element(&self, k: usize) -> GradedElement {
        self.element_from_base(&Degree::zero(self.nullity), &self.cartan[k].clone())
    }

    pub fn cartan_dim(&self) -> usize {
        self.cartan.len()
    }

    /// Chevalley coordinates of a whole graded element, per degree.
    pub fn to_base_coords(&self, x: &GradedElement) -> BTreeMap<Degree, SparseVec> {
        let mut out: BTreeMap<Degree, SparseVec> = BTreeMap::new();
        for ((d, s), c) in &x.terms {
            let vec = self.slot_vector(d, *s);
            let entry = out.entry(d.clone()).or_default();
            crate::exactnum::vec_add_scaled(entry, vec, c);
        }
        out.retain(|_, v| !v.is_empty());
        out
    }
}

impl GradedLieAlgebra for MultiloopAlgebra {
    fn nullity(&self) -> usize {
        self.nullity
    }

    fn dim_at(&self, degree: &Degree) -> usize {
        self.dim_residue(&self.residue_of(degree))
    }

    fn slot_label(&self, degree: &Degree, slot: usize) -> String {
        let v = self.slot_vector(degree, slot);
        if v.len() == 1 {
            let (&i, c) = v.iter().next().unwrap();
            if c.is_one() {
                return self.base.label(i);
            }
        }
        format!("L{}", slot)
    }

    fn bracket_basis(&self, d1: &Degree, s1: usize, d2: &Degree, s2: usize) -> GradedElement {
        let key = (self.residue_of(d1), s1, self.residue_of(d2), s2);
        let Some(entries) = self.bracket_table.get(&key) else {
            return GradedElement::zero();
        };
        let target = d1.add(d2);
        let mut out = GradedElement::zero();
        for (slot, c) in entries {
            out.add_term(target.clone(), *slot, c);
        }
        out
    }
}
