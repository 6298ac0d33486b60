//! The Galois action of `Gamma = Lambda/Xi` on `g tensor S` and the
//! fixed-point description of the multiloop algebra.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::exactnum::{RowSpace, Scalar, SparseMatrix, SparseVec};
use crate::glie::{Degree, Window};

use super::build::MultiloopAlgebra;

/// Action of `Gamma` on `g tensor S`: the generator `gamma_i` scales
/// `z^lambda` by `zeta_{m_i}^{lambda_i}` and acts on `g` through
/// `sigma_i^{-1}`.
#[derive(Clone, Debug)]
pub struct GammaAction {
    pub orders: Vec<u32>,
    /// `sigma_i^{-1}` on the Chevalley basis.
    pub sigma_inv: Vec<SparseMatrix>,
    dim: usize,
}

pub fn gamma_action(ml: &MultiloopAlgebra) -> GammaAction {
    let sigma_inv: Vec<SparseMatrix> =
        ml.auts.iter().map(|a| a.matrix.pow(a.order.saturating_sub(1))).collect();
    GammaAction { orders: ml.orders.clone(), sigma_inv, dim: ml.base.dim }
}

impl GammaAction {
    pub fn is_trivial(&self) -> bool {
        self.orders.iter().all(|&m| m == 1)
    }

    /// All group elements as residue tuples.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        super::build::residues(&self.orders)
    }

    /// Matrix of the element `gamma^g` on the degree-`deg` slice
    /// `g tensor z^deg` (Chevalley coordinates).
    pub fn element_matrix_at(&self, gamma: &[i64], deg: &Degree) -> SparseMatrix {
        let mut m = SparseMatrix::identity(self.dim);
        let mut phase = Scalar::one();
        for (i, &g) in gamma.iter().enumerate() {
            for _ in 0..g.rem_euclid(self.orders[i] as i64) {
                m = self.sigma_inv[i].mul(&m);
            }
            phase = phase.mul(&Scalar::root_of_unity(self.orders[i], g * deg.0[i]));
        }
        m.scale(&phase)
    }

    /// Fixed subspace of `g tensor z^deg` under the full group action.
    pub fn fixed_points_at(&self, deg: &Degree) -> Vec<SparseVec> {
        let gens = self.orders.len();
        let mut stacked = SparseMatrix::new(self.dim * gens, self.dim);
        for i in 0..gens {
            let mut gamma = alloc::vec![0i64; gens];
            gamma[i] = 1;
            let m = self.element_matrix_at(&gamma, deg);
            for (&(r, c), s) in m.entries() {
                stacked.set(i * self.dim + r, c, s.clone());
            }
            for c in 0..self.dim {
                let cur = stacked.get(i * self.dim + c, c);
                stacked.set(i * self.dim + c, c, cur.sub(&Scalar::one()));
            }
        }
        stacked.kernel_basis()
    }
}

/// Per-degree fixed-point bases over a window.
pub fn gamma_fixed_points(ga: &GammaAction, window: Window) -> BTreeMap<Degree, Vec<SparseVec>> {
    window.degrees().into_iter().map(|d| {
        let basis = ga.fixed_points_at(&d);
        (d, basis)
    }).collect()
}

/// Verify that the Galois descent recovers the eigenbasis degree by degree;
/// returns the first offending degree otherwise.
pub fn descent_matches_eigenbasis(ml: &MultiloopAlgebra, window: Window) -> Result<(), Degree> {
    let ga = gamma_action(ml);
    for (deg, fixed) in gamma_fixed_points(&ga, window) {
        let eigen = ml.eigenbasis(&ml.residue_of(&deg));
        let a = RowSpace::from_vectors(&fixed);
        let b = RowSpace::from_vectors(eigen);
        if !a.same_space(&b) {
            return Err(deg);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{
        build_automorphism, build_root_system, build_simple_algebra, identity_automorphism, Series,
    };

    #[test]
    fn untwisted_action_is_trivial() {
        let alg = build_simple_algebra(&build_root_system(Series::A, 1).unwrap()).unwrap();
        let id = identity_automorphism(&alg);
        let ml = super::super::build::build_multiloop(&alg, &[id]).unwrap();
        let ga = gamma_action(&ml);
        assert!(ga.is_trivial());
        for (_, basis) in gamma_fixed_points(&ga, Window::new(1, 2)) {
            assert_eq!(basis.len(), 3);
        }
    }

    #[test]
    fn twisted_sl3_fixed_points_match_eigenspaces() {
        let alg = build_simple_algebra(&build_root_system(Series::A, 2).unwrap()).unwrap();
        let omega = build_automorphism(&alg, &[1, 0], &[0, 0], 2).unwrap();
        let ml = super::super::build::build_multiloop(&alg, &[omega]).unwrap();
        let ga = gamma_action(&ml);
        for m in -3i64..=3 {
            let deg = Degree(alloc::vec![m]);
            let fixed = ga.fixed_points_at(&deg);
            let expect = if m.rem_euclid(2) == 0 { 3 } else { 5 };
            assert_eq!(fixed.len(), expect, "degree {}", m);
        }
        assert!(descent_matches_eigenbasis(&ml, Window::new(1, 3)).is_ok());
    }
}
