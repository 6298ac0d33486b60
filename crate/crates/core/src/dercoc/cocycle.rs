//! The central cocycle `sigma_D(x, y)(d) = (d(x) | y)` valued in the graded
//! dual `C`, and validation of user-supplied affine cocycles
//! `tau : D x D -> C`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::exactnum::Scalar;
use crate::glie::GradedElement;
use crate::multiloop::MultiloopAlgebra;

use super::derivation::DAlgebra;
use super::form::form_l;

/// An element of `C` over the dual basis: index `k` is the functional dual
/// to the `k`-th `D`-basis vector.
pub type CElement = BTreeMap<usize, Scalar>;

pub fn c_add_scaled(dst: &mut CElement, src: &CElement, coeff: &Scalar) {
    if coeff.is_zero() {
        return;
    }
    for (&k, v) in src {
        let add = v.mul(coeff);
        match dst.get_mut(&k) {
            Some(cur) => {
                let next = cur.add(&add);
                if next.is_zero() {
                    dst.remove(&k);
                } else {
                    *cur = next;
                }
            }
            None => {
                dst.insert(k, add);
            }
        }
    }
}

/// Evaluate a functional on the `D`-basis vector `k`.
pub fn c_eval(c: &CElement, k: usize) -> Scalar {
    c.get(&k).cloned().unwrap_or_else(Scalar::zero)
}

/// Contragredient action of the `D`-basis vector `i` on a functional.
pub fn d_act_on_c(da: &DAlgebra, i: usize, c: &CElement) -> CElement {
    let mut out = CElement::new();
    for (&j, v) in c {
        for (k, r) in da.act_on_dual(i, j) {
            let add = v.mul(&Scalar::from_rat(r));
            match out.get_mut(&k) {
                Some(cur) => {
                    let next = cur.add(&add);
                    if next.is_zero() {
                        out.remove(&k);
                    } else {
                        *cur = next;
                    }
                }
                None => {
                    if !add.is_zero() {
                        out.insert(k, add);
                    }
                }
            }
        }
    }
    out
}

/// `sigma_D(x, y)` as a functional on `D`; it automatically lands in the
/// graded dual because the form pairs opposite degrees only.
pub fn sigma_d(
    da: &DAlgebra,
    ml: &MultiloopAlgebra,
    x: &GradedElement,
    y: &GradedElement,
) -> CElement {
    let mut out = CElement::new();
    for k in 0..da.dim() {
        let dx = da.derivation(k).apply(x);
        if dx.is_zero() {
            continue;
        }
        let v = form_l(ml, &dx, y);
        if !v.is_zero() {
            out.insert(k, v);
        }
    }
    out
}

/// Table-backed affine cocycle; unlisted pairs are zero and `tau(j, i)`
/// falls back to `-tau(i, j)`.
#[derive(Clone, Debug, Default)]
pub struct AffineCocycle {
    pub table: BTreeMap<(usize, usize), CElement>,
}

impl AffineCocycle {
    pub fn zero() -> Self {
        AffineCocycle::default()
    }

    pub fn is_zero(&self) -> bool {
        self.table.values().all(|c| c.is_empty())
    }

    pub fn eval(&self, i: usize, j: usize) -> CElement {
        if let Some(c) = self.table.get(&(i, j)) {
            return c.clone();
        }
        if let Some(c) = self.table.get(&(j, i)) {
            let mut out = CElement::new();
            c_add_scaled(&mut out, c, &Scalar::from_int(-1));
            return out;
        }
        CElement::new()
    }

    /// Bilinear extension over `D`-coordinates.
    pub fn eval_lin(&self, a: &[(usize, Scalar)], b: &[(usize, Scalar)]) -> CElement {
        let mut out = CElement::new();
        for (i, ci) in a {
            for (j, cj) in b {
                c_add_scaled(&mut out, &self.eval(*i, *j), &ci.mul(cj));
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleViolation {
    pub identity: String,
    pub witness: String,
}

impl fmt::Display for CocycleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "affine cocycle violates {} at {}", self.identity, self.witness)
    }
}

/// Check the affine-cocycle laws on all basis pairs and triples:
/// degree compatibility, alternation, vanishing on `D^0`, cyclic symmetry,
/// and the full 2-cocycle identity for the contragredient action on `C`.
pub fn validate_affine_cocycle(da: &DAlgebra, tau: &AffineCocycle) -> Result<(), CocycleViolation> {
    let n = da.dim();
    for (&(i, j), c) in &tau.table {
        if i >= n || j >= n {
            return Err(CocycleViolation {
                identity: String::from("table indices"),
                witness: format!("pair ({}, {})", i, j),
            });
        }
        // tau(d_i, d_j) must live in C^(xi_i + xi_j).
        let target = da.degree_of(i).add(da.degree_of(j));
        for &k in c.keys() {
            if da.degree_of(k).neg() != target {
                return Err(CocycleViolation {
                    identity: String::from("degree compatibility"),
                    witness: format!("tau({}, {}) has a component outside C^{}", i, j, target),
                });
            }
        }
    }
    for i in 0..n {
        if !tau.eval(i, i).is_empty() {
            return Err(CocycleViolation {
                identity: String::from("alternation"),
                witness: format!("tau({0}, {0}) != 0", i),
            });
        }
        for j in 0..n {
            let mut sym = tau.eval(i, j);
            c_add_scaled(&mut sym, &tau.eval(j, i), &Scalar::one());
            if !sym.is_empty() {
                return Err(CocycleViolation {
                    identity: String::from("alternation"),
                    witness: format!("tau({i}, {j}) + tau({j}, {i}) != 0"),
                });
            }
            if da.degree_of(i).is_zero() && !tau.eval(i, j).is_empty() {
                return Err(CocycleViolation {
                    identity: String::from("tau(D^0, D) = 0"),
                    witness: format!("tau({i}, {j}) != 0 with d{i} of degree zero"),
                });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let tij = tau.eval(i, j);
            for k in 0..n {
                // Cyclic symmetry.
                let lhs = c_eval(&tij, k);
                let rhs = c_eval(&tau.eval(j, k), i);
                if lhs != rhs {
                    return Err(CocycleViolation {
                        identity: String::from("cyclic symmetry"),
                        witness: format!("tau({i},{j})(d{k}) != tau({j},{k})(d{i})"),
                    });
                }
                // 2-cocycle identity with the D-action on C.
                let mut sum = d_act_on_c(da, i, &tau.eval(j, k));
                c_add_scaled(&mut sum, &d_act_on_c(da, j, &tau.eval(k, i)), &Scalar::one());
                c_add_scaled(&mut sum, &d_act_on_c(da, k, &tau.eval(i, j)), &Scalar::one());
                let one = Scalar::one();
                let neg = Scalar::from_int(-1);
                let unit = |idx: usize| alloc::vec![(idx, one.clone())];
                let bij = da.bracket_basis(i, j).into_iter().map(|(t, r)| (t, Scalar::from_rat(r))).collect::<Vec<_>>();
                let bjk = da.bracket_basis(j, k).into_iter().map(|(t, r)| (t, Scalar::from_rat(r))).collect::<Vec<_>>();
                let bki = da.bracket_basis(k, i).into_iter().map(|(t, r)| (t, Scalar::from_rat(r))).collect::<Vec<_>>();
                c_add_scaled(&mut sum, &tau.eval_lin(&bij, &unit(k)), &neg);
                c_add_scaled(&mut sum, &tau.eval_lin(&bjk, &unit(i)), &neg);
                c_add_scaled(&mut sum, &tau.eval_lin(&bki, &unit(j)), &neg);
                if !sum.is_empty() {
                    return Err(CocycleViolation {
                        identity: String::from("2-cocycle identity"),
                        witness: format!("triple (d{i}, d{j}, d{k})"),
                    });
                }
            }
        }
    }
    Ok(())
}
