//! Weight decomposition of a multiloop algebra under its fixed Cartan, and
//! recognition of the resulting (possibly non-reduced) root system.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactnum::{Rat, Scalar, Solver, SparseMatrix, SparseVec};
use crate::glie::{Degree, GradedElement, GradedLieAlgebra, Window};
use crate::rootsys::{build_root_system, killing_pair, RootDatum, Series};

use super::build::MultiloopAlgebra;

pub type Weight = Vec<Rat>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GradingError {
    /// The window support of the weights is not a finite irreducible root
    /// system; the detail names the failing axiom.
    NotRootSystem(String),
}

impl fmt::Display for GradingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GradingError::NotRootSystem(d) => write!(f, "weight support is not a root system: {}", d),
        }
    }
}

fn scalar_to_rat(s: &Scalar) -> Rat {
    s.as_rat().expect("Cartan weights are rational")
}

/// Candidate weights of the fixed Cartan on the base algebra: restrictions
/// of the base roots (including zero), deduplicated.
pub fn weight_candidates(ml: &MultiloopAlgebra) -> Vec<Weight> {
    let mut seen: BTreeMap<Weight, ()> = BTreeMap::new();
    for root in &ml.base.datum.roots {
        let w: Weight = ml
            .cartan
            .iter()
            .map(|h| {
                let mut acc = Rat::zero();
                for (&i, c) in h {
                    if i < ml.base.rank() {
                        let p = ml.base.datum.pairing(root, &ml.base.datum.simple_root(i));
                        acc += scalar_to_rat(c) * Rat::from_integer(BigInt::from(p));
                    }
                }
                acc
            })
            .collect();
        seen.insert(w, ());
    }
    seen.keys().cloned().collect()
}

/// Matrices of `ad h_k` on the eigenbasis at `deg`, one per Cartan basis
/// vector.
fn cartan_ad_matrices(ml: &MultiloopAlgebra, deg: &Degree) -> Vec<SparseMatrix> {
    let d = ml.dim_at(deg);
    ml.cartan
        .iter()
        .map(|h| {
            let mut m = SparseMatrix::new(d, d);
            for j in 0..d {
                let out = ml.base.bracket(h, ml.slot_vector(deg, j));
                if out.is_empty() {
                    continue;
                }
                for (slot, c) in ml.coordinatize(deg, &out) {
                    m.set(slot, j, c);
                }
            }
            m
        })
        .collect()
}

/// Joint weight decomposition of `L^deg` under the fixed Cartan. The spaces
/// returned are nonzero and their dimensions sum to `dim L^deg`.
pub fn weight_spaces_at(
    ml: &MultiloopAlgebra,
    deg: &Degree,
) -> Vec<(Weight, Vec<GradedElement>)> {
    let d = ml.dim_at(deg);
    if d == 0 {
        return Vec::new();
    }
    let ads = cartan_ad_matrices(ml, deg);
    let mut out = Vec::new();
    let mut total = 0;
    for w in weight_candidates(ml) {
        let mut stacked = SparseMatrix::new(d * ads.len().max(1), d);
        for (k, m) in ads.iter().enumerate() {
            for (&(r, c), s) in m.entries() {
                stacked.set(k * d + r, c, s.clone());
            }
            let wk = Scalar::from_rat(w[k].clone());
            for c in 0..d {
                let cur = stacked.get(k * d + c, c);
                stacked.set(k * d + c, c, cur.sub(&wk));
            }
        }
        let kernel = stacked.kernel_basis();
        if kernel.is_empty() {
            continue;
        }
        total += kernel.len();
        let elems = kernel
            .iter()
            .map(|v| {
                let mut e = GradedElement::zero();
                for (&slot, c) in v {
                    e.add_term(deg.clone(), slot, c);
                }
                e
            })
            .collect();
        out.push((w, elems));
    }
    assert_eq!(total, d, "Cartan action must be diagonalizable on each degree");
    out
}

/// Rational pairing on weights transferred through the Killing form of the
/// base algebra restricted to the fixed Cartan.
pub struct WeightForm {
    solver: Solver,
    dim: usize,
}

impl WeightForm {
    pub fn new(ml: &MultiloopAlgebra) -> Self {
        let n = ml.cartan_dim();
        let mut gram = SparseMatrix::new(n, n);
        for i in 0..n {
            for j in 0..n {
                gram.set(i, j, killing_pair(&ml.base, &ml.cartan[i], &ml.cartan[j]));
            }
        }
        WeightForm { solver: Solver::new(&gram), dim: n }
    }

    /// Coordinates of the dual vector `t_w` over the Cartan basis.
    pub fn dual_vector(&self, w: &Weight) -> Vec<Rat> {
        let mut b = SparseVec::new();
        for (k, v) in w.iter().enumerate() {
            if !v.is_zero() {
                b.insert(k, Scalar::from_rat(v.clone()));
            }
        }
        let x = self.solver.solve(&b).expect("Killing form nondegenerate on the fixed Cartan");
        (0..self.dim)
            .map(|k| x.get(&k).map(scalar_to_rat).unwrap_or_else(Rat::zero))
            .collect()
    }

    pub fn pair(&self, a: &Weight, b: &Weight) -> Rat {
        let t = self.dual_vector(a);
        t.iter().zip(b).map(|(x, y)| x * y).fold(Rat::zero(), |acc, v| acc + v)
    }
}

#[derive(Clone, Debug)]
pub struct RootGrading {
    /// The detected root system; roots are integer vectors over the detected
    /// simple system of the grading.
    pub datum: RootDatum,
    /// Root coordinates -> weight functional on the Cartan basis.
    pub weight_of: BTreeMap<Vec<i64>, Weight>,
    /// Per-root, per-degree bases inside the analyzed window.
    pub spaces: BTreeMap<(Vec<i64>, Degree), Vec<GradedElement>>,
}

impl RootGrading {
    pub fn dim(&self, root: &[i64], deg: &Degree) -> usize {
        self.spaces.get(&(root.to_vec(), deg.clone())).map(|v| v.len()).unwrap_or(0)
    }

    pub fn support_degrees(&self) -> Vec<Degree> {
        let mut out: Vec<Degree> = Vec::new();
        for ((_, d), v) in &self.spaces {
            if !v.is_empty() && !out.contains(d) {
                out.push(d.clone());
            }
        }
        out
    }
}

fn weight_is_positive(w: &Weight) -> bool {
    for c in w {
        if !c.is_zero() {
            return c.is_positive();
        }
    }
    false
}

#[allow(dead_code)]
fn weight_add(a: &Weight, b: &Weight) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn weight_sub(a: &Weight, b: &Weight) -> Weight {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn weight_neg(a: &Weight) -> Weight {
    a.iter().map(|x| -x.clone()).collect()
}

fn weight_scale_int(a: &Weight, k: i64) -> Weight {
    a.iter().map(|x| x * Rat::from_integer(BigInt::from(k))).collect()
}

/// Compute the root grading of the torus: weight support over the window,
/// root-system verification, and series recognition.
pub fn root_grading(ml: &MultiloopAlgebra, window: Window) -> Result<RootGrading, GradingError> {
    let form = WeightForm::new(ml);
    let mut support: BTreeMap<Weight, ()> = BTreeMap::new();
    let mut raw_spaces: BTreeMap<(Weight, Degree), Vec<GradedElement>> = BTreeMap::new();
    for deg in window.degrees() {
        for (w, elems) in weight_spaces_at(ml, &deg) {
            support.insert(w.clone(), ());
            raw_spaces.insert((w, deg.clone()), elems);
        }
    }
    let nonzero: Vec<Weight> =
        support.keys().filter(|w| w.iter().any(|c| !c.is_zero())).cloned().collect();
    if nonzero.is_empty() {
        return Err(GradingError::NotRootSystem(String::from("no nonzero weights")));
    }

    // Root system axioms on the weight support.
    for w in &nonzero {
        if !support.contains_key(&weight_neg(w)) {
            return Err(GradingError::NotRootSystem(format!("missing negative of {:?}", w)));
        }
    }
    let pairing_int = |beta: &Weight, alpha: &Weight| -> Result<i64, GradingError> {
        let two = Rat::from_integer(BigInt::from(2));
        let q = form.pair(beta, alpha) * two / form.pair(alpha, alpha);
        if !q.denom().is_one() {
            return Err(GradingError::NotRootSystem(format!(
                "non-integral coroot pairing {:?} with {:?}",
                beta, alpha
            )));
        }
        Ok(i64::try_from(q.numer().clone()).expect("small pairing"))
    };
    for alpha in &nonzero {
        for beta in &nonzero {
            let p = pairing_int(beta, alpha)?;
            let refl = weight_sub(beta, &weight_scale_int(alpha, p));
            let is_zero = refl.iter().all(|c| c.is_zero());
            if !is_zero && !support.contains_key(&refl) {
                return Err(GradingError::NotRootSystem(format!(
                    "reflection of {:?} along {:?} leaves the support",
                    beta, alpha
                )));
            }
        }
    }
    // Irreducibility: connectivity under a nonvanishing pairing.
    {
        let mut reached = alloc::vec![false; nonzero.len()];
        let mut stack = alloc::vec![0usize];
        reached[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..nonzero.len() {
                if !reached[j] && !form.pair(&nonzero[i], &nonzero[j]).is_zero() {
                    reached[j] = true;
                    stack.push(j);
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return Err(GradingError::NotRootSystem(String::from("weight support is reducible")));
        }
    }

    // Simple system of the support.
    let positives: Vec<Weight> = nonzero.iter().filter(|w| weight_is_positive(w)).cloned().collect();
    let pos_set: BTreeMap<Weight, ()> = positives.iter().cloned().map(|w| (w, ())).collect();
    let simples: Vec<Weight> = positives
        .iter()
        .filter(|w| {
            !positives.iter().any(|a| {
                let rest = weight_sub(w, a);
                rest.iter().any(|c| !c.is_zero()) && pos_set.contains_key(&rest)
            })
        })
        .cloned()
        .collect();
    let rank = simples.len();

    // Integer coordinates of every weight over the simple system.
    let dim = ml.cartan_dim();
    let mut mat = SparseMatrix::new(dim, rank);
    for (j, s) in simples.iter().enumerate() {
        for (k, c) in s.iter().enumerate() {
            mat.set(k, j, Scalar::from_rat(c.clone()));
        }
    }
    let solver = Solver::new(&mat);
    let coords_of = |w: &Weight| -> Result<Vec<i64>, GradingError> {
        let mut b = SparseVec::new();
        for (k, c) in w.iter().enumerate() {
            if !c.is_zero() {
                b.insert(k, Scalar::from_rat(c.clone()));
            }
        }
        let x = solver.solve(&b).ok_or_else(|| {
            GradingError::NotRootSystem(format!("weight {:?} outside the simple span", w))
        })?;
        let mut out = alloc::vec![0i64; rank];
        for (j, c) in x {
            let r = scalar_to_rat(&c);
            if !r.denom().is_one() {
                return Err(GradingError::NotRootSystem(format!(
                    "weight {:?} has non-integral simple coordinates",
                    w
                )));
            }
            out[j] = i64::try_from(r.numer().clone()).expect("small coordinate");
        }
        Ok(out)
    };

    // Recognize the series.
    let series = recognize_series(&form, &nonzero, rank)?;
    let cartan: Vec<Vec<i64>> = (0..rank)
        .map(|i| {
            (0..rank)
                .map(|j| pairing_int(&simples[j], &simples[i]).expect("validated above"))
                .collect()
        })
        .collect();
    let two = Rat::from_integer(BigInt::from(2));
    let norms: Vec<Rat> = simples.iter().map(|s| form.pair(s, s) / two.clone()).collect();
    let mut roots: Vec<Vec<i64>> = alloc::vec![alloc::vec![0; rank]];
    let mut weight_of: BTreeMap<Vec<i64>, Weight> = BTreeMap::new();
    weight_of.insert(alloc::vec![0; rank], alloc::vec![Rat::zero(); dim]);
    for w in &nonzero {
        let c = coords_of(w)?;
        roots.push(c.clone());
        weight_of.insert(c, w.clone());
    }
    let datum = RootDatum::from_parts(series, rank, cartan, norms, roots);

    let mut spaces = BTreeMap::new();
    for ((w, deg), elems) in raw_spaces {
        let c = coords_of(&w)?;
        spaces.insert((c, deg), elems);
    }
    Ok(RootGrading { datum, weight_of, spaces })
}

/// Match the weight support against the catalogue of irreducible systems by
/// rank, cardinality, divisibility, and squared-length ratios.
fn recognize_series(
    form: &WeightForm,
    nonzero: &[Weight],
    rank: usize,
) -> Result<Series, GradingError> {
    let count = nonzero.len();
    let set: BTreeMap<Weight, ()> = nonzero.iter().cloned().map(|w| (w, ())).collect();
    let divisible = nonzero.iter().any(|w| set.contains_key(&weight_scale_int(w, 2)));
    let ratios = norm_ratios(nonzero.iter().map(|w| form.pair(w, w)));

    for series in [Series::A, Series::B, Series::C, Series::D, Series::E, Series::F, Series::G, Series::BC] {
        let Ok(datum) = build_root_system(series, rank) else { continue };
        if datum.num_nonzero_roots() != count {
            continue;
        }
        let cand_divisible = !datum.is_reduced();
        if cand_divisible != divisible {
            continue;
        }
        let cand_ratios =
            norm_ratios(datum.nonzero_roots().map(|r| datum.form(r, r)));
        if cand_ratios == ratios {
            return Ok(series);
        }
    }
    Err(GradingError::NotRootSystem(format!(
        "no catalogued system of rank {} with {} roots matches",
        rank, count
    )))
}

/// Multiset of squared lengths normalized by the minimum.
fn norm_ratios(norms: impl Iterator<Item = Rat>) -> Vec<(Rat, usize)> {
    let values: Vec<Rat> = norms.collect();
    let min = values.iter().min().expect("nonempty").clone();
    let mut counts: BTreeMap<Rat, usize> = BTreeMap::new();
    for v in values {
        *counts.entry(v / min.clone()).or_insert(0) += 1;
    }
    counts.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{
        build_automorphism, build_root_system, build_simple_algebra, identity_automorphism,
    };

    fn untwisted(series: Series, rank: usize, n: usize) -> MultiloopAlgebra {
        let alg = build_simple_algebra(&build_root_system(series, rank).unwrap()).unwrap();
        let auts: Vec<_> = (0..n).map(|_| identity_automorphism(&alg)).collect();
        super::super::build::build_multiloop(&alg, &auts).unwrap()
    }

    #[test]
    fn untwisted_a2_grading_is_a2() {
        let ml = untwisted(Series::A, 2, 1);
        let g = root_grading(&ml, Window::new(1, 2)).unwrap();
        assert_eq!(g.datum.series, Series::A);
        assert_eq!(g.datum.rank, 2);
        assert_eq!(g.datum.num_nonzero_roots(), 6);
    }

    #[test]
    fn twisted_sl3_grading_is_bc1() {
        let alg = build_simple_algebra(&build_root_system(Series::A, 2).unwrap()).unwrap();
        let omega = build_automorphism(&alg, &[1, 0], &[0, 0], 2).unwrap();
        let ml = super::super::build::build_multiloop(&alg, &[omega]).unwrap();
        let g = root_grading(&ml, Window::new(1, 3)).unwrap();
        assert_eq!(g.datum.series, Series::BC);
        assert_eq!(g.datum.rank, 1);
        // 2*alpha appears only in odd degrees.
        for m in -3i64..=3 {
            let deg = Degree(alloc::vec![m]);
            let dim_double = g.dim(&[2], &deg);
            if m.rem_euclid(2) == 0 {
                assert_eq!(dim_double, 0, "at degree {}", m);
            } else {
                assert_eq!(dim_double, 1, "at degree {}", m);
            }
        }
    }

    #[test]
    fn nullity_two_untwisted_sl2_one_dimensional_root_spaces() {
        let ml = untwisted(Series::A, 1, 2);
        let g = root_grading(&ml, Window::new(2, 2)).unwrap();
        assert_eq!(g.datum.series, Series::A);
        assert_eq!(g.datum.rank, 1);
        for deg in Window::new(2, 2).degrees() {
            assert_eq!(g.dim(&[1], &deg), 1);
            assert_eq!(g.dim(&[-1], &deg), 1);
            assert_eq!(g.dim(&[0], &deg), 1);
        }
    }
}
