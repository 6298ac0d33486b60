//! Smith normal form of integer matrices with unimodular transform
//! witnesses.

use alloc::vec;
use alloc::vec::Vec;

pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Clone, Debug)]
pub struct Smith {
    /// Invariant factors `d_1 | d_2 | ...`, padded with zeros up to
    /// `min(rows, cols)`.
    pub diag: Vec<i64>,
    /// Unimodular `left` with `left * m * right` diagonal.
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub rank: usize,
}

fn identity(n: usize) -> IntMatrix {
    let mut m = vec![vec![0; n]; n];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

fn swap_rows(m: &mut IntMatrix, a: usize, b: usize) {
    m.swap(a, b);
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `row_a += k * row_b`
fn add_row(m: &mut IntMatrix, a: usize, b: usize, k: i64) {
    for c in 0..m[0].len() {
        m[a][c] += k * m[b][c];
    }
}

/// `col_a += k * col_b`
fn add_col(m: &mut IntMatrix, a: usize, b: usize, k: i64) {
    for row in m.iter_mut() {
        row[a] += k * row[b];
    }
}

fn negate_row(m: &mut IntMatrix, a: usize) {
    for c in 0..m[0].len() {
        m[a][c] = -m[a][c];
    }
}

pub fn smith_normal_form(input: &IntMatrix) -> Smith {
    let rows = input.len();
    let cols = if rows == 0 { 0 } else { input[0].len() };
    let mut a = input.clone();
    let mut left = identity(rows);
    let mut right = identity(cols);
    let n = rows.min(cols);

    for t in 0..n {
        // Pivot: smallest absolute nonzero value in the remaining block,
        // ties broken by (row, col).
        let mut pivot: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                if a[r][c] != 0 {
                    let better = match pivot {
                        None => true,
                        Some((pr, pc)) => a[r][c].abs() < a[pr][pc].abs(),
                    };
                    if better {
                        pivot = Some((r, c));
                    }
                }
            }
        }
        let Some((pr, pc)) = pivot else { break };
        swap_rows(&mut a, t, pr);
        swap_rows(&mut left, t, pr);
        swap_cols(&mut a, t, pc);
        swap_cols(&mut right, t, pc);

        // Clear row and column `t` by euclidean reduction; repeat until the
        // pivot divides everything it faces.
        loop {
            let mut clean = true;
            for r in t + 1..rows {
                if a[r][t] != 0 {
                    let k = a[r][t].div_euclid(a[t][t]);
                    if k != 0 {
                        add_row(&mut a, r, t, -k);
                        add_row(&mut left, r, t, -k);
                    }
                    if a[r][t] != 0 {
                        swap_rows(&mut a, t, r);
                        swap_rows(&mut left, t, r);
                        clean = false;
                    }
                }
            }
            for c in t + 1..cols {
                if a[t][c] != 0 {
                    let k = a[t][c].div_euclid(a[t][t]);
                    if k != 0 {
                        add_col(&mut a, c, t, -k);
                        add_col(&mut right, c, t, -k);
                    }
                    if a[t][c] != 0 {
                        swap_cols(&mut a, t, c);
                        swap_cols(&mut right, t, c);
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }

        if a[t][t] < 0 {
            negate_row(&mut a, t);
            negate_row(&mut left, t);
        }
    }

    // Enforce the divisibility chain d_t | d_{t+1}.
    loop {
        let mut fixed = true;
        for t in 0..n.saturating_sub(1) {
            let (d1, d2) = (a[t][t], a[t + 1][t + 1]);
            if d1 != 0 && d2 % d1 != 0 {
                // Fold d2 into position (t, t+1) and re-reduce the 2x2 block.
                add_col(&mut a, t, t + 1, 1);
                add_col(&mut right, t, t + 1, 1);
                reduce_block(&mut a, &mut left, &mut right, t);
                fixed = false;
            }
        }
        if fixed {
            break;
        }
    }

    let mut diag = vec![0; n];
    let mut rank = 0;
    for (t, d) in diag.iter_mut().enumerate() {
        *d = a[t][t];
        if *d != 0 {
            rank += 1;
        }
    }
    Smith { diag, left, right, rank }
}

/// Re-diagonalize the 2x2 block at `t` after a divisibility fix.
fn reduce_block(a: &mut IntMatrix, left: &mut IntMatrix, right: &mut IntMatrix, t: usize) {
    let rows = a.len();
    let cols = a[0].len();
    loop {
        // Column t has entries at (t,t) and (t+1,t); row t at (t,t), (t,t+1).
        let mut progress = false;
        if a[t + 1][t] != 0 {
            if a[t][t] == 0 || (a[t + 1][t] != 0 && a[t + 1][t].abs() < a[t][t].abs()) {
                swap_rows(a, t, t + 1);
                swap_rows(left, t, t + 1);
            }
            let k = a[t + 1][t].div_euclid(a[t][t]);
            add_row(a, t + 1, t, -k);
            add_row(left, t + 1, t, -k);
            if a[t + 1][t] != 0 {
                swap_rows(a, t, t + 1);
                swap_rows(left, t, t + 1);
            }
            progress = true;
        }
        if a[t][t + 1] != 0 {
            if a[t][t] == 0 || (a[t][t + 1] != 0 && a[t][t + 1].abs() < a[t][t].abs()) {
                swap_cols(a, t, t + 1);
                swap_cols(right, t, t + 1);
            }
            let k = a[t][t + 1].div_euclid(a[t][t]);
            add_col(a, t + 1, t, -k);
            add_col(right, t + 1, t, -k);
            if a[t][t + 1] != 0 {
                swap_cols(a, t, t + 1);
                swap_cols(right, t, t + 1);
            }
            progress = true;
        }
        if !progress {
            break;
        }
        let _ = (rows, cols);
    }
    if a[t][t] < 0 {
        negate_row(a, t);
        negate_row(left, t);
    }
    if a[t + 1][t + 1] < 0 {
        let s = t + 1;
        negate_row(a, s);
        negate_row(left, s);
    }
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let rows = a.len();
    let inner = if rows == 0 { 0 } else { a[0].len() };
    let cols = if b.is_empty() { 0 } else { b[0].len() };
    let mut out = vec![vec![0; cols]; rows];
    for r in 0..rows {
        for k in 0..inner {
            if a[r][k] == 0 {
                continue;
            }
            for c in 0..cols {
                out[r][c] += a[r][k] * b[k][c];
            }
        }
    }
    out
}

/// Determinant via integer-preserving (Bareiss) elimination.
pub fn det(m: &IntMatrix) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for t in 0..n {
        if a[t][t] == 0 {
            let Some(swap) = (t + 1..n).find(|&r| a[r][t] != 0) else {
                return 0;
            };
            a.swap(t, swap);
            sign = -sign;
        }
        for r in t + 1..n {
            for c in t + 1..n {
                a[r][c] = (a[r][c] * a[t][t] - a[r][t] * a[t][c]) / prev;
            }
            a[r][t] = 0;
        }
        prev = a[t][t];
    }
    (sign * a[n - 1][n - 1]) as i64
}

/// Rank of the lattice spanned by the given integer vectors.
pub fn lattice_rank(vectors: &[Vec<i64>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    smith_normal_form(&vectors.to_vec()).rank
}

/// True when the vectors generate the full integer lattice `Z^n`.
pub fn generates_full_lattice(vectors: &[Vec<i64>], n: usize) -> bool {
    if vectors.is_empty() {
        return n == 0;
    }
    let smith = smith_normal_form(&vectors.to_vec());
    smith.rank == n && smith.diag.iter().take(n).all(|&d| d == 1 || d == -1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_witnesses(m: &IntMatrix, s: &Smith) {
        let prod = mat_mul(&mat_mul(&s.left, m), &s.right);
        for (r, row) in prod.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                let expect = if r == c && r < s.diag.len() { s.diag[r] } else { 0 };
                assert_eq!(v, expect, "L*M*R not diagonal at ({r},{c})");
            }
        }
        assert_eq!(det(&s.left).abs(), 1, "left transform not unimodular");
        assert_eq!(det(&s.right).abs(), 1, "right transform not unimodular");
        for w in s.diag.windows(2) {
            if w[0] != 0 {
                assert_eq!(w[1] % w[0], 0, "divisibility chain broken");
            } else {
                assert_eq!(w[1], 0);
            }
        }
    }

    #[test]
    fn diag_2_3_becomes_1_6() {
        let m = vec![vec![2, 0], vec![0, 3]];
        let s = smith_normal_form(&m);
        assert_eq!(s.diag, vec![1, 6]);
        check_witnesses(&m, &s);
    }

    #[test]
    fn zero_matrix() {
        let m = vec![vec![0, 0], vec![0, 0], vec![0, 0]];
        let s = smith_normal_form(&m);
        assert_eq!(s.diag, vec![0, 0]);
        assert_eq!(s.rank, 0);
        check_witnesses(&m, &s);
    }

    #[test]
    fn spanning_rows_have_rank_two() {
        let m = vec![vec![1, 0], vec![0, 1], vec![1, 1]];
        let s = smith_normal_form(&m);
        assert_eq!(s.rank, 2);
        assert!(generates_full_lattice(&m, 2));
        check_witnesses(&m, &s);
    }

    #[test]
    fn sublattice_detected() {
        assert!(!generates_full_lattice(&[vec![2, 0], vec![0, 2]], 2));
        assert!(generates_full_lattice(&[vec![2, 1], vec![1, 1]], 2));
    }

    #[test]
    fn assorted_witness_checks() {
        let cases: Vec<IntMatrix> = vec![
            vec![vec![4, 6], vec![6, 9]],
            vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]],
            vec![vec![1, 2, 3]],
            vec![vec![5], vec![10], vec![15]],
            vec![vec![0, 1], vec![1, 0]],
            vec![vec![-3, 1], vec![7, -2]],
        ];
        for m in &cases {
            let s = smith_normal_form(m);
            check_witnesses(m, &s);
        }
    }
}
