//! Chevalley bases with deterministic structure constants.
//!
//! Signs are fixed by the extraspecial-pair method: positive roots are
//! ordered by height then lexicographically, the extraspecial pair of each
//! non-simple positive root gets a positive constant, and every other
//! constant is derived from the standard identities relating constants of
//! root quadruples summing to zero. The resulting base is verified by the
//! exhaustive Jacobi tests below.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactnum::{Rat, SparseMatrix, SparseVec};

use super::datum::{height, Root, RootDatum, Series};

#[derive(Clone, Debug)]
pub struct SimpleLieAlgebra {
    pub datum: RootDatum,
    pub dim: usize,
    /// Nonzero roots in basis order (Cartan elements occupy slots `0..rank`).
    pub root_list: Vec<Root>,
    root_index: BTreeMap<Root, usize>,
    /// Full bracket table on basis pairs.
    table: BTreeMap<(usize, usize), SparseVec>,
    /// Killing form on the basis.
    pub killing: SparseMatrix,
}

impl SimpleLieAlgebra {
    pub fn rank(&self) -> usize {
        self.datum.rank
    }

    /// Basis index of the root vector `x_alpha`.
    pub fn root_slot(&self, alpha: &[i64]) -> usize {
        self.root_index[alpha]
    }

    pub fn slot_root(&self, slot: usize) -> Option<&Root> {
        slot.checked_sub(self.rank()).and_then(|i| self.root_list.get(i))
    }

    pub fn label(&self, slot: usize) -> String {
        if slot < self.rank() {
            format!("h{}", slot + 1)
        } else {
            let root = &self.root_list[slot - self.rank()];
            let parts: Vec<String> = root.iter().map(|c| format!("{}", c)).collect();
            format!("x({})", parts.join(","))
        }
    }

    pub fn bracket_slots(&self, i: usize, j: usize) -> SparseVec {
        self.table.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (&i, a) in x {
            for (&j, b) in y {
                if let Some(t) = self.table.get(&(i, j)) {
                    crate::exactnum::vec_add_scaled(&mut out, t, &a.mul(b));
                }
            }
        }
        out
    }

    pub fn ad(&self, x: &SparseVec) -> SparseMatrix {
        let mut m = SparseMatrix::new(self.dim, self.dim);
        for j in 0..self.dim {
            let mut col = SparseVec::new();
            col.insert(j, crate::exactnum::Scalar::one());
            let out = self.bracket(x, &col);
            for (r, s) in out {
                m.set(r, j, s);
            }
        }
        m
    }

    pub fn basis_vec(&self, slot: usize) -> SparseVec {
        let mut v = SparseVec::new();
        v.insert(slot, crate::exactnum::Scalar::one());
        v
    }

    /// Structure constant `N_{alpha,beta}` for nonzero roots with nonzero
    /// root sum.
    pub fn n_constant(&self, alpha: &[i64], beta: &[i64]) -> i64 {
        let sum: Root = alpha.iter().zip(beta).map(|(a, b)| a + b).collect();
        assert!(self.datum.is_nonzero_root(&sum));
        let slot = self.root_slot(&sum);
        let v = self.bracket_slots(self.root_slot(alpha), self.root_slot(beta));
        let c = v.get(&slot).expect("constant present");
        let r = c.as_rat().expect("structure constant is rational");
        assert!(r.denom().is_one());
        i64::try_from(r.numer().clone()).unwrap()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraError {
    NonReduced,
}

impl fmt::Display for AlgebraError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraError::NonReduced => {
                write!(f, "Chevalley bases require a reduced root system (BC rejected)")
            }
        }
    }
}

/// Carter-style structure constants over a fixed positive-root order.
struct Constants<'a> {
    datum: &'a RootDatum,
    /// `(alpha, beta) -> N_{alpha,beta}` memo.
    memo: RefCell<BTreeMap<(Root, Root), Rat>>,
    /// Extraspecial decomposition of each non-simple positive root.
    extraspecial: BTreeMap<Root, (Root, Root)>,
    /// Position in the (height, lex) order of positive roots.
    order: BTreeMap<Root, usize>,
}

impl<'a> Constants<'a> {
    fn new(datum: &'a RootDatum) -> Self {
        let order: BTreeMap<Root, usize> =
            datum.positive_roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let mut extraspecial = BTreeMap::new();
        for gamma in &datum.positive_roots {
            if height(gamma) <= 1 {
                continue;
            }
            let first = datum
                .positive_roots
                .iter()
                .find_map(|alpha| {
                    let beta: Root = gamma.iter().zip(alpha).map(|(g, a)| g - a).collect();
                    (datum.is_nonzero_root(&beta) && height(&beta) > 0)
                        .then_some((alpha.clone(), beta))
                })
                .expect("positive non-simple root decomposes");
            extraspecial.insert(gamma.clone(), first);
        }
        Constants { datum, memo: RefCell::new(BTreeMap::new()), extraspecial, order }
    }

    fn norm(&self, r: &[i64]) -> Rat {
        self.datum.form(r, r)
    }

    /// `N_{alpha,beta}`; zero when `alpha + beta` is not a nonzero root.
    fn n(&self, alpha: &Root, beta: &Root) -> Rat {
        let sum: Root = alpha.iter().zip(beta).map(|(a, b)| a + b).collect();
        if !self.datum.is_nonzero_root(&sum) {
            return Rat::zero();
        }
        if let Some(v) = self.memo.borrow().get(&(alpha.clone(), beta.clone())) {
            return v.clone();
        }
        let value = self.compute(alpha, beta, &sum);
        self.memo.borrow_mut().insert((alpha.clone(), beta.clone()), value.clone());
        value
    }

    fn compute(&self, alpha: &Root, beta: &Root, sum: &Root) -> Rat {
        let pos_a = height(alpha) > 0;
        let pos_b = height(beta) > 0;
        if pos_a && pos_b {
            // Order the pair.
            if self.order[alpha] > self.order[beta] {
                return -self.n(beta, alpha);
            }
            let (ex_a, ex_b) = self.extraspecial[sum].clone();
            if *alpha == ex_a {
                // Defining positive choice: N = p + 1.
                let p = self.datum.chain_down(beta, alpha);
                return Rat::from_integer(BigInt::from(p + 1));
            }
            // Quadruple (ex_a, ex_b, -alpha, -beta) sums to zero; the
            // standard four-term identity expresses N_{alpha,beta} through
            // constants for sums of smaller height.
            let diff_b: Root = beta.iter().zip(&ex_a).map(|(b, a)| b - a).collect();
            let diff_a: Root = alpha.iter().zip(&ex_a).map(|(a, e)| a - e).collect();
            let mut acc = Rat::zero();
            if self.datum.is_nonzero_root(&diff_b) {
                let t = self.n(&ex_b, &alpha.iter().map(|&c| -c).collect())
                    * self.n(&ex_a, &beta.iter().map(|&c| -c).collect())
                    / self.norm(&diff_b);
                acc += t;
            }
            if self.datum.is_nonzero_root(&diff_a) {
                let neg_alpha: Root = alpha.iter().map(|&c| -c).collect();
                let neg_beta: Root = beta.iter().map(|&c| -c).collect();
                let t = self.n(&neg_alpha, &ex_a) * self.n(&ex_b, &neg_beta) / self.norm(&diff_a);
                acc += t;
            }
            let n_ex = self.n(&ex_a, &ex_b);
            return acc * self.norm(sum) / n_ex;
        }
        if !pos_a && !pos_b {
            let na: Root = alpha.iter().map(|&c| -c).collect();
            let nb: Root = beta.iter().map(|&c| -c).collect();
            return -self.n(&na, &nb);
        }
        if !pos_a {
            return -self.n(beta, alpha);
        }
        // alpha positive, beta negative.
        if height(sum) > 0 {
            // (alpha, beta, -sum) sums to zero: N_{alpha,beta}/(sum,sum) =
            // N_{beta,-sum}/(alpha,alpha).
            let neg_beta: Root = beta.iter().map(|&c| -c).collect();
            -self.norm(sum) / self.norm(alpha) * self.n(&neg_beta, sum)
        } else {
            // (alpha, beta, -sum) with -sum positive: N_{alpha,beta}/(sum,sum)
            // = N_{-sum,alpha}/(beta,beta).
            let neg_sum: Root = sum.iter().map(|&c| -c).collect();
            self.norm(sum) / self.norm(beta) * self.n(&neg_sum, alpha)
        }
    }
}

pub fn build_simple_algebra(datum: &RootDatum) -> Result<SimpleLieAlgebra, AlgebraError> {
    if !datum.is_reduced() || datum.series == Series::BC {
        return Err(AlgebraError::NonReduced);
    }
    let rank = datum.rank;
    let root_list: Vec<Root> = datum.nonzero_roots().cloned().collect();
    let root_index: BTreeMap<Root, usize> =
        root_list.iter().enumerate().map(|(i, r)| (r.clone(), i + rank)).collect();
    let dim = rank + root_list.len();
    let consts = Constants::new(datum);

    let scalar_int = |n: i64| crate::exactnum::Scalar::from_int(n);
    let mut table: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
    let mut set_entry = |i: usize, j: usize, v: SparseVec| {
        if !v.is_empty() {
            table.insert((i, j), v);
        }
    };

    // [h_i, x_alpha] and [x_alpha, h_i].
    for (ri, root) in root_list.iter().enumerate() {
        let slot = rank + ri;
        for i in 0..rank {
            let coeff = datum.pairing(root, &datum.simple_root(i));
            if coeff != 0 {
                let mut v = SparseVec::new();
                v.insert(slot, scalar_int(coeff));
                set_entry(i, slot, v.clone());
                let mut w = SparseVec::new();
                w.insert(slot, scalar_int(-coeff));
                set_entry(slot, i, w);
            }
        }
    }

    // [x_alpha, x_beta].
    for (ri, alpha) in root_list.iter().enumerate() {
        for (rj, beta) in root_list.iter().enumerate() {
            let si = rank + ri;
            let sj = rank + rj;
            let sum: Root = alpha.iter().zip(beta).map(|(a, b)| a + b).collect();
            if RootDatum::is_zero(&sum) {
                // [x_alpha, x_{-alpha}] = h_alpha over the simple coroots.
                let coords = datum.coroot_coords(alpha);
                let mut v = SparseVec::new();
                for (i, &c) in coords.iter().enumerate() {
                    if c != 0 {
                        v.insert(i, scalar_int(c));
                    }
                }
                set_entry(si, sj, v);
            } else if datum.is_nonzero_root(&sum) {
                let n = consts.n(alpha, beta);
                assert!(n.denom().is_one(), "structure constant must be integral");
                if !n.is_zero() {
                    let mut v = SparseVec::new();
                    v.insert(root_index[&sum], crate::exactnum::Scalar::from_rat(n));
                    set_entry(si, sj, v);
                }
            }
        }
    }

    let mut alg = SimpleLieAlgebra {
        datum: datum.clone(),
        dim,
        root_list,
        root_index,
        table,
        killing: SparseMatrix::new(dim, dim),
    };
    alg.killing = compute_killing(&alg);
    Ok(alg)
}

/// Killing form as traces of composed adjoint maps. The Cartan block is the
/// trace of the diagonal action on root spaces; root-space pairs are traced
/// through the bracket table.
fn compute_killing(alg: &SimpleLieAlgebra) -> SparseMatrix {
    let rank = alg.rank();
    let datum = &alg.datum;
    let mut k = SparseMatrix::new(alg.dim, alg.dim);
    for i in 0..rank {
        for j in 0..rank {
            let mut acc: i64 = 0;
            for root in datum.nonzero_roots() {
                acc += datum.pairing(root, &datum.simple_root(i))
                    * datum.pairing(root, &datum.simple_root(j));
            }
            if acc != 0 {
                k.set(i, j, crate::exactnum::Scalar::from_int(acc));
            }
        }
    }
    for (ri, alpha) in alg.root_list.iter().enumerate() {
        let neg: Root = alpha.iter().map(|&c| -c).collect();
        let si = rank + ri;
        let sj = alg.root_slot(&neg);
        // trace of ad x_alpha . ad x_{-alpha}
        let mut acc = crate::exactnum::Scalar::zero();
        for b in 0..alg.dim {
            let step = alg.bracket_slots(sj, b);
            let mut out = SparseVec::new();
            for (&m, c) in &step {
                crate::exactnum::vec_add_scaled(&mut out, &alg.bracket_slots(si, m), c);
            }
            if let Some(c) = out.get(&b) {
                acc = acc.add(c);
            }
        }
        k.set(si, sj, acc);
    }
    k
}

/// Killing pairing of two arbitrary vectors.
pub fn killing_pair(
    alg: &SimpleLieAlgebra,
    x: &SparseVec,
    y: &SparseVec,
) -> crate::exactnum::Scalar {
    let mut acc = crate::exactnum::Scalar::zero();
    for (&i, a) in x {
        for (&j, b) in y {
            let k = alg.killing.get(i, j);
            if !k.is_zero() {
                acc = acc.add(&a.mul(b).mul(&k));
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Scalar;
    use crate::rootsys::datum::build_root_system;

    fn jacobi_exhaustive(alg: &SimpleLieAlgebra) {
        let one = Scalar::one();
        for a in 0..alg.dim {
            let va = alg.basis_vec(a);
            for b in 0..alg.dim {
                let vb = alg.basis_vec(b);
                let ab = alg.bracket(&va, &vb);
                for c in 0..alg.dim {
                    let vc = alg.basis_vec(c);
                    let bc = alg.bracket(&vb, &vc);
                    let ca = alg.bracket(&vc, &va);
                    let mut sum = alg.bracket(&ab, &vc);
                    crate::exactnum::vec_add_scaled(&mut sum, &alg.bracket(&bc, &va), &one);
                    crate::exactnum::vec_add_scaled(&mut sum, &alg.bracket(&ca, &vb), &one);
                    assert!(sum.is_empty(), "Jacobi fails at triple ({a},{b},{c})");
                }
            }
        }
    }

    fn build(series: Series, rank: usize) -> SimpleLieAlgebra {
        build_simple_algebra(&build_root_system(series, rank).unwrap()).unwrap()
    }

    #[test]
    fn jacobi_holds_exhaustively_on_small_ranks() {
        for (series, rank) in [(Series::A, 1), (Series::A, 2), (Series::B, 2), (Series::G, 2)] {
            jacobi_exhaustive(&build(series, rank));
        }
    }

    #[test]
    fn jacobi_holds_exhaustively_on_a3_and_c3() {
        jacobi_exhaustive(&build(Series::A, 3));
        jacobi_exhaustive(&build(Series::C, 3));
    }

    #[test]
    fn a1_killing_values() {
        let alg = build(Series::A, 1);
        let h = alg.basis_vec(0);
        let e = alg.basis_vec(alg.root_slot(&[1]));
        let f = alg.basis_vec(alg.root_slot(&[-1]));
        assert_eq!(killing_pair(&alg, &h, &h), Scalar::from_int(8));
        assert_eq!(killing_pair(&alg, &e, &f), Scalar::from_int(4));
        assert_eq!(killing_pair(&alg, &e, &e), Scalar::zero());
    }

    #[test]
    fn a2_constants_are_unit_magnitude() {
        let alg = build(Series::A, 2);
        for a in alg.datum.nonzero_roots() {
            for b in alg.datum.nonzero_roots() {
                let sum: Root = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if alg.datum.is_nonzero_root(&sum) {
                    let n = alg.n_constant(a, b);
                    assert!(n == 1 || n == -1, "N_{{{:?},{:?}}} = {}", a, b, n);
                }
            }
        }
    }

    #[test]
    fn g2_constants_have_chain_magnitude() {
        let alg = build(Series::G, 2);
        for a in alg.datum.nonzero_roots() {
            for b in alg.datum.nonzero_roots() {
                let sum: Root = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if alg.datum.is_nonzero_root(&sum) {
                    let p = alg.datum.chain_down(b, a);
                    assert_eq!(alg.n_constant(a, b).abs(), p + 1, "at {:?},{:?}", a, b);
                }
            }
        }
    }

    #[test]
    fn chevalley_relation_h_x() {
        let alg = build(Series::B, 2);
        for (ri, root) in alg.root_list.iter().enumerate() {
            for i in 0..alg.rank() {
                let out = alg.bracket_slots(i, alg.rank() + ri);
                let expect = alg.datum.pairing(root, &alg.datum.simple_root(i));
                let got = out
                    .get(&(alg.rank() + ri)).cloned()
                    .unwrap_or_else(Scalar::zero);
                assert_eq!(got, Scalar::from_int(expect));
            }
        }
    }

    #[test]
    fn killing_orthogonality_of_root_spaces() {
        let alg = build(Series::A, 2);
        for (ri, a) in alg.root_list.iter().enumerate() {
            for (rj, b) in alg.root_list.iter().enumerate() {
                let sum: Root = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if !RootDatum::is_zero(&sum) {
                    assert!(alg
                        .killing
                        .get(alg.rank() + ri, alg.rank() + rj)
                        .is_zero());
                }
            }
        }
    }

    #[test]
    fn killing_invariance_sampled() {
        let alg = build(Series::B, 2);
        for a in 0..alg.dim {
            for b in 0..alg.dim {
                for c in [0usize, 3, alg.dim - 1] {
                    let va = alg.basis_vec(a);
                    let vb = alg.basis_vec(b);
                    let vc = alg.basis_vec(c);
                    let lhs = killing_pair(&alg, &alg.bracket(&va, &vb), &vc);
                    let rhs = killing_pair(&alg, &va, &alg.bracket(&vb, &vc));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn bc_rejected_as_algebra_input() {
        let d = build_root_system(Series::BC, 1).unwrap();
        assert_eq!(build_simple_algebra(&d).unwrap_err(), AlgebraError::NonReduced);
    }
}
