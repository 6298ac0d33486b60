//! Finite root systems in the basis of simple roots.
//!
//! Roots are integer coefficient vectors over the simple roots. Following
//! the convention used throughout this crate, `0` is a member of every root
//! system. `BC` systems can be built (they arise as root gradings of twisted
//! tori) but are rejected as input for Chevalley bases.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactnum::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    /// Non-reduced union of `B_l` with the doubles of its short roots.
    BC,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
            Series::E => "E",
            Series::F => "F",
            Series::G => "G",
            Series::BC => "BC",
        };
        write!(f, "{}", s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootError {
    InvalidType(String),
}

impl fmt::Display for RootError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootError::InvalidType(s) => write!(f, "invalid root system: {}", s),
        }
    }
}

pub type Root = Vec<i64>;

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub series: Series,
    pub rank: usize,
    /// `cartan[i][j] = <alpha_j, alpha_i^vee>`.
    pub cartan: Vec<Vec<i64>>,
    /// Half squared lengths `d_i = (alpha_i, alpha_i) / 2`; `d_i * cartan[i][j]`
    /// is the symmetrized form.
    pub norms: Vec<Rat>,
    /// All roots including `0`, sorted by (height, lexicographic).
    pub roots: Vec<Root>,
    pub positive_roots: Vec<Root>,
    root_set: BTreeSet<Root>,
}

pub fn height(v: &[i64]) -> i64 {
    v.iter().sum()
}

fn cartan_and_norms(series: Series, rank: usize) -> Result<(Vec<Vec<i64>>, Vec<Rat>), RootError> {
    let err = |msg: &str| Err(RootError::InvalidType(String::from(msg)));
    let chain = |l: usize| -> Vec<Vec<i64>> {
        let mut a = vec![vec![0i64; l]; l];
        for i in 0..l {
            a[i][i] = 2;
            if i + 1 < l {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        }
        a
    };
    let ones = |l: usize| vec![Rat::one(); l];
    match (series, rank) {
        (Series::A, l) if l >= 1 => Ok((chain(l), ones(l))),
        (Series::B, l) if l >= 2 => {
            let mut a = chain(l);
            a[l - 1][l - 2] = -2;
            let mut d = ones(l);
            d[l - 1] = Rat::new(BigInt::one(), BigInt::from(2));
            Ok((a, d))
        }
        (Series::C, l) if l >= 2 => {
            let mut a = chain(l);
            a[l - 2][l - 1] = -2;
            let mut d = ones(l);
            d[l - 1] = Rat::from_integer(BigInt::from(2));
            Ok((a, d))
        }
        (Series::D, l) if l >= 4 => {
            let mut a = chain(l - 1);
            for row in a.iter_mut() {
                row.push(0);
            }
            a.push(vec![0; l]);
            a[l - 1][l - 1] = 2;
            a[l - 3][l - 1] = -1;
            a[l - 1][l - 3] = -1;
            Ok((a, ones(l)))
        }
        (Series::E, l) if (6..=8).contains(&l) => {
            // Bourbaki numbering: node 2 hangs off node 4.
            let edges: &[(usize, usize)] = &[(1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 4)];
            let mut a = vec![vec![0i64; l]; l];
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = 2;
            }
            for &(p, q) in edges {
                if p <= l && q <= l {
                    a[p - 1][q - 1] = -1;
                    a[q - 1][p - 1] = -1;
                }
            }
            Ok((a, ones(l)))
        }
        (Series::F, 4) => {
            let mut a = chain(4);
            a[2][1] = -2;
            let half = Rat::new(BigInt::one(), BigInt::from(2));
            Ok((a, vec![Rat::one(), Rat::one(), half.clone(), half]))
        }
        (Series::G, 2) => {
            let a = vec![vec![2, -3], vec![-1, 2]];
            Ok((a, vec![Rat::one(), Rat::from_integer(BigInt::from(3))]))
        }
        (Series::BC, l) if l >= 1 => {
            // Underlying reduced system: A1 for rank one, B_l otherwise.
            if l == 1 {
                cartan_and_norms(Series::A, 1)
            } else {
                cartan_and_norms(Series::B, l)
            }
        }
        _ => err("unsupported (series, rank) pair"),
    }
}

pub fn build_root_system(series: Series, rank: usize) -> Result<RootDatum, RootError> {
    let (cartan, norms) = cartan_and_norms(series, rank)?;
    // Close the simple roots under the simple reflections.
    let mut set: BTreeSet<Root> = BTreeSet::new();
    let mut queue: Vec<Root> = Vec::new();
    for i in 0..rank {
        let mut e = vec![0i64; rank];
        e[i] = 1;
        set.insert(e.clone());
        queue.push(e);
    }
    while let Some(beta) = queue.pop() {
        for i in 0..rank {
            let pairing: i64 = (0..rank).map(|j| beta[j] * cartan[i][j]).sum();
            let mut refl = beta.clone();
            refl[i] -= pairing;
            if !set.contains(&refl) {
                set.insert(refl.clone());
                queue.push(refl);
            }
        }
    }
    if series == Series::BC {
        // Adjoin doubles of the short roots (all roots for rank one).
        let min_norm = set
            .iter()
            .map(|r| form_of(&cartan, &norms, r, r))
            .min()
            .expect("nonempty root set");
        let doubles: Vec<Root> = set
            .iter()
            .filter(|r| form_of(&cartan, &norms, r, r) == min_norm)
            .map(|r| r.iter().map(|&c| 2 * c).collect())
            .collect();
        set.extend(doubles);
    }
    set.insert(vec![0; rank]);

    let mut roots: Vec<Root> = set.iter().cloned().collect();
    roots.sort_by_key(|r| (height(r), r.clone()));
    let positive_roots: Vec<Root> = roots.iter().filter(|r| height(r) > 0).cloned().collect();
    Ok(RootDatum { series, rank, cartan, norms, roots, positive_roots, root_set: set })
}

fn form_of(cartan: &[Vec<i64>], norms: &[Rat], a: &[i64], b: &[i64]) -> Rat {
    let mut acc = Rat::zero();
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            if bj == 0 || cartan[i][j] == 0 {
                continue;
            }
            acc += &norms[i] * Rat::from_integer(BigInt::from(ai * bj * cartan[i][j]));
        }
    }
    acc
}

impl RootDatum {
    /// Assemble a datum from raw parts (used when a root system is detected
    /// from a weight support rather than built from the catalogue).
    pub fn from_parts(
        series: Series,
        rank: usize,
        cartan: Vec<Vec<i64>>,
        norms: Vec<Rat>,
        roots: Vec<Root>,
    ) -> Self {
        let mut roots = roots;
        roots.sort_by_key(|r| (height(r), r.clone()));
        roots.dedup();
        let root_set: BTreeSet<Root> = roots.iter().cloned().collect();
        let positive_roots: Vec<Root> = roots.iter().filter(|r| height(r) > 0).cloned().collect();
        RootDatum { series, rank, cartan, norms, roots, positive_roots, root_set }
    }

    /// Invariant symmetric form `(a, b)` extended from the simple roots.
    pub fn form(&self, a: &[i64], b: &[i64]) -> Rat {
        form_of(&self.cartan, &self.norms, a, b)
    }

    /// Coroot pairing `<beta, alpha^vee> = 2 (beta, alpha) / (alpha, alpha)`.
    pub fn pairing(&self, beta: &[i64], alpha: &[i64]) -> i64 {
        let num = self.form(beta, alpha) * Rat::from_integer(BigInt::from(2));
        let den = self.form(alpha, alpha);
        let q = num / den;
        assert!(q.denom().is_one(), "coroot pairing must be integral");
        let n = q.numer();
        i64::try_from(n.clone()).expect("pairing fits in i64")
    }

    /// Coordinates of `alpha^vee` over the simple coroots; integral for
    /// every root.
    pub fn coroot_coords(&self, alpha: &[i64]) -> Vec<i64> {
        let d_alpha = self.form(alpha, alpha) / Rat::from_integer(BigInt::from(2));
        alpha
            .iter()
            .enumerate()
            .map(|(i, &a)| {
                let c = Rat::from_integer(BigInt::from(a)) * &self.norms[i] / d_alpha.clone();
                assert!(c.denom().is_one(), "coroot coordinate must be integral");
                i64::try_from(c.numer().clone()).expect("coordinate fits in i64")
            })
            .collect()
    }

    pub fn is_nonzero_root(&self, v: &[i64]) -> bool {
        v.iter().any(|&c| c != 0) && self.root_set.contains(v)
    }

    pub fn is_zero(v: &[i64]) -> bool {
        v.iter().all(|&c| c == 0)
    }

    pub fn nonzero_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| !Self::is_zero(r))
    }

    pub fn num_nonzero_roots(&self) -> usize {
        self.roots.len() - 1
    }

    pub fn is_reduced(&self) -> bool {
        self.series != Series::BC
    }

    /// Largest `p >= 0` with `beta - p*alpha` a root.
    pub fn chain_down(&self, beta: &[i64], alpha: &[i64]) -> i64 {
        let mut p = 0;
        let mut cur: Root = beta.to_vec();
        loop {
            for (c, &a) in cur.iter_mut().zip(alpha.iter()) {
                *c -= a;
            }
            if self.is_nonzero_root(&cur) {
                p += 1;
            } else {
                break;
            }
        }
        p
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut e = vec![0i64; self.rank];
        e[i] = 1;
        e
    }

    /// Indivisible roots: `0` together with the roots whose half is not a root.
    pub fn indivisible_roots(&self) -> Vec<Root> {
        self.roots
            .iter()
            .filter(|r| {
                if Self::is_zero(r) {
                    return true;
                }
                if r.iter().any(|&c| c % 2 != 0) {
                    return true;
                }
                let half: Root = r.iter().map(|&c| c / 2).collect();
                !self.is_nonzero_root(&half)
            })
            .cloned()
            .collect()
    }

    /// Positional order used for structure constants: by height, then
    /// lexicographically.
    pub fn positive_index(&self, root: &[i64]) -> Option<usize> {
        self.positive_roots.iter().position(|r| r.as_slice() == root)
    }
}

pub fn root_order_key(r: &[i64]) -> (i64, Vec<i64>) {
    (height(r), r.to_vec())
}
