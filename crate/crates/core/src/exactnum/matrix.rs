//! Sparse matrices over [`Scalar`] with exact elimination.
//!
//! Pivoting is deterministic everywhere: columns are processed in increasing
//! order and the pivot row is the one with the smallest index, so reduced
//! forms, kernels and solvers are reproducible.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::scalar::Scalar;

/// A sparse column vector; no explicit zero entries.
pub type SparseVec = BTreeMap<usize, Scalar>;

pub fn vec_insert(v: &mut SparseVec, idx: usize, s: Scalar) {
    if !s.is_zero() {
        v.insert(idx, s);
    }
}

/// `dst += coeff * src`.
pub fn vec_add_scaled(dst: &mut SparseVec, src: &SparseVec, coeff: &Scalar) {
    if coeff.is_zero() {
        return;
    }
    for (&i, s) in src {
        let add = s.mul(coeff);
        match dst.get_mut(&i) {
            Some(cur) => {
                let next = cur.add(&add);
                if next.is_zero() {
                    dst.remove(&i);
                } else {
                    *cur = next;
                }
            }
            None => {
                dst.insert(i, add);
            }
        }
    }
}

pub fn vec_scale(v: &SparseVec, coeff: &Scalar) -> SparseVec {
    if coeff.is_zero() {
        return SparseVec::new();
    }
    v.iter().map(|(&i, s)| (i, s.mul(coeff))).collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = SparseMatrix::new(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_columns(rows: usize, cols: &[SparseVec]) -> Self {
        let mut m = SparseMatrix::new(rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            for (&r, s) in col {
                m.set(r, c, s.clone());
            }
        }
        m
    }

    pub fn set(&mut self, r: usize, c: usize, s: Scalar) {
        debug_assert!(r < self.rows && c < self.cols);
        if s.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), s);
        }
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.range((r, 0)..(r + 1, 0)).map(|(&(_, c), s)| (c, s))
    }

    pub fn column(&self, c: usize) -> SparseVec {
        let mut v = SparseVec::new();
        for (&(r, cc), s) in &self.entries {
            if cc == c {
                v.insert(r, s.clone());
            }
        }
        v
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (&(r, c), s) in &other.entries {
            let sum = out.get(r, c).add(s);
            out.set(r, c, sum);
        }
        out
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, coeff: &Scalar) -> SparseMatrix {
        let mut out = SparseMatrix::new(self.rows, self.cols);
        if coeff.is_zero() {
            return out;
        }
        for (&(r, c), s) in &self.entries {
            out.set(r, c, s.mul(coeff));
        }
        out
    }

    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (&(i, j), a) in &self.entries {
            for (k, b) in other.row(j) {
                let term = a.mul(b);
                if term.is_zero() {
                    continue;
                }
                let entry = acc.entry((i, k)).or_insert_with(Scalar::zero);
                *entry = entry.add(&term);
            }
        }
        acc.retain(|_, s| !s.is_zero());
        SparseMatrix { rows: self.rows, cols: other.cols, entries: acc }
    }

    /// Matrix times column vector.
    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let mut y = SparseVec::new();
        for (&(r, c), a) in &self.entries {
            if let Some(v) = x.get(&c) {
                let term = a.mul(v);
                if term.is_zero() {
                    continue;
                }
                match y.get_mut(&r) {
                    Some(cur) => {
                        let next = cur.add(&term);
                        if next.is_zero() {
                            y.remove(&r);
                        } else {
                            *cur = next;
                        }
                    }
                    None => {
                        y.insert(r, term);
                    }
                }
            }
        }
        y
    }

    pub fn pow(&self, mut n: u32) -> SparseMatrix {
        assert_eq!(self.rows, self.cols);
        let mut base = self.clone();
        let mut acc = SparseMatrix::identity(self.rows);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    /// Inverse of a square matrix, when it exists.
    pub fn inverse(&self) -> Option<SparseMatrix> {
        assert_eq!(self.rows, self.cols);
        let solver = Solver::new(self);
        let mut out = SparseMatrix::new(self.rows, self.cols);
        for c in 0..self.cols {
            let mut e = SparseVec::new();
            e.insert(c, Scalar::one());
            let col = solver.solve(&e)?;
            for (r, s) in col {
                out.set(r, c, s);
            }
        }
        Some(out)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut out = SparseMatrix::new(self.cols, self.rows);
        for (&(r, c), s) in &self.entries {
            out.set(c, r, s.clone());
        }
        out
    }

    pub fn commutes_with(&self, other: &SparseMatrix) -> bool {
        self.mul(other) == other.mul(self)
    }

    fn to_rows(&self) -> Vec<SparseVec> {
        let mut rows: Vec<SparseVec> = alloc::vec![SparseVec::new(); self.rows];
        for (&(r, c), s) in &self.entries {
            rows[r].insert(c, s.clone());
        }
        rows
    }

    /// Reduced row echelon form; returns the reduced rows and pivot
    /// positions `(row, col)` in elimination order.
    pub fn rref(&self) -> (Vec<SparseVec>, Vec<(usize, usize)>) {
        let mut rows = self.to_rows();
        let pivots = rref_in_place(&mut rows);
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Exact basis of the right null space, one vector per free column,
    /// in increasing column order. Empty iff the matrix is injective.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let (rows, pivots) = self.rref();
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = SparseVec::new();
            v.insert(free, Scalar::one());
            for &(r, c) in &pivots {
                if let Some(s) = rows[r].get(&free) {
                    v.insert(c, s.neg());
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// In-place RREF over a list of sparse rows. Pivot selection: smallest
/// column first, then the smallest available row index.
pub fn rref_in_place(rows: &mut [SparseVec]) -> Vec<(usize, usize)> {
    let ncols = rows
        .iter()
        .filter_map(|r| r.keys().next_back().map(|&c| c + 1))
        .max()
        .unwrap_or(0);
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..ncols {
        let Some(found) = (next_row..rows.len()).find(|&r| rows[r].contains_key(&col)) else {
            continue;
        };
        rows.swap(next_row, found);
        let inv = rows[next_row].get(&col).unwrap().inv().expect("pivot is nonzero");
        rows[next_row] = vec_scale(&rows[next_row], &inv);
        let pivot_row = rows[next_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next_row {
                continue;
            }
            if let Some(c) = row.get(&col).cloned() {
                vec_add_scaled(row, &pivot_row, &c.neg());
            }
        }
        pivots.push((next_row, col));
        next_row += 1;
        if next_row == rows.len() {
            break;
        }
    }
    pivots
}

/// Row-reduced view of a collection of vectors; answers membership and
/// containment questions about their span.
#[derive(Clone, Debug)]
pub struct RowSpace {
    rows: Vec<SparseVec>,
    pivots: Vec<(usize, usize)>,
}

impl RowSpace {
    pub fn from_vectors(vectors: &[SparseVec]) -> Self {
        let mut rows: Vec<SparseVec> = vectors.to_vec();
        let pivots = rref_in_place(&mut rows);
        rows.truncate(pivots.len());
        RowSpace { rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Residual of `v` after reduction against the span; empty iff member.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for &(r, c) in &self.pivots {
            if let Some(coef) = out.get(&c).cloned() {
                vec_add_scaled(&mut out, &self.rows[r], &coef.neg());
            }
        }
        out
    }

    pub fn contains_vec(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn contains_space(&self, other: &RowSpace) -> bool {
        other.rows.iter().all(|v| self.contains_vec(v))
    }

    pub fn same_space(&self, other: &RowSpace) -> bool {
        self.dim() == other.dim() && self.contains_space(other)
    }
}

/// Incrementally built echelon basis of a subspace. Rows stay fully
/// reduced, so membership is a single reduction pass.
#[derive(Clone, Debug, Default)]
pub struct EchelonSpace {
    rows: Vec<SparseVec>,
    /// pivot column -> row index
    pivots: BTreeMap<usize, usize>,
}

impl EchelonSpace {
    pub fn new() -> Self {
        EchelonSpace::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        loop {
            let Some((&col, coef)) = out.iter().find(|(c, _)| self.pivots.contains_key(c)) else {
                return out;
            };
            let row = self.pivots[&col];
            let coef = coef.clone();
            vec_add_scaled(&mut out, &self.rows[row], &coef.neg());
        }
    }

    pub fn contains_vec(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Insert a vector; returns `true` when the dimension grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let mut rem = self.reduce(v);
        let Some((&lead, _)) = rem.iter().next() else {
            return false;
        };
        let inv = rem.get(&lead).unwrap().inv().expect("leading entry nonzero");
        rem = vec_scale(&rem, &inv);
        // Keep earlier rows reduced against the new pivot.
        for row in self.rows.iter_mut() {
            if let Some(c) = row.get(&lead).cloned() {
                vec_add_scaled(row, &rem, &c.neg());
            }
        }
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(rem);
        true
    }
}

/// Precomputed elimination data for solving `A x = b` repeatedly against a
/// fixed matrix whose columns are independent.
#[derive(Clone, Debug)]
pub struct Solver {
    rows: usize,
    cols: usize,
    /// RREF rows of the augmented matrix `[A | I]`.
    reduced: Vec<SparseVec>,
    /// Pivot `(row, col)` pairs, all with `col < cols`.
    pivots: Vec<(usize, usize)>,
}

impl Solver {
    pub fn new(a: &SparseMatrix) -> Self {
        let mut rows = a.to_rows();
        for (r, row) in rows.iter_mut().enumerate() {
            row.insert(a.cols + r, Scalar::one());
        }
        // Restrict pivoting to the A-columns: the identity block never
        // produces a pivot because each A-column is processed first and the
        // block keeps full rank rows alive.
        let pivots = rref_in_place_bounded(&mut rows, a.cols);
        Solver { rows: a.rows, cols: a.cols, reduced: rows, pivots }
    }

    /// Solve `A x = b`; `None` when `b` is outside the column span.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        let eb: Vec<Scalar> = self
            .reduced
            .iter()
            .map(|row| {
                let mut acc = Scalar::zero();
                for (&c, s) in row.range(self.cols..self.cols + self.rows) {
                    if let Some(v) = b.get(&(c - self.cols)) {
                        acc = acc.add(&s.mul(v));
                    }
                }
                acc
            })
            .collect();
        let pivot_rows: Vec<usize> = self.pivots.iter().map(|&(r, _)| r).collect();
        for (r, val) in eb.iter().enumerate() {
            if !pivot_rows.contains(&r) && !val.is_zero() {
                return None;
            }
        }
        let mut x = SparseVec::new();
        for &(r, c) in &self.pivots {
            vec_insert(&mut x, c, eb[r].clone());
        }
        Some(x)
    }
}

fn rref_in_place_bounded(rows: &mut [SparseVec], ncols: usize) -> Vec<(usize, usize)> {
    let mut pivots = Vec::new();
    let mut next_row = 0;
    for col in 0..ncols {
        let Some(found) = (next_row..rows.len()).find(|&r| rows[r].contains_key(&col)) else {
            continue;
        };
        rows.swap(next_row, found);
        let inv = rows[next_row].get(&col).unwrap().inv().expect("pivot is nonzero");
        rows[next_row] = vec_scale(&rows[next_row], &inv);
        let pivot_row = rows[next_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next_row {
                continue;
            }
            if let Some(c) = row.get(&col).cloned() {
                vec_add_scaled(row, &pivot_row, &c.neg());
            }
        }
        pivots.push((next_row, col));
        next_row += 1;
        if next_row == rows.len() {
            break;
        }
    }
    pivots
}
