//! Projectors onto joint eigenspaces of commuting finite-order operators.

use alloc::vec::Vec;
use core::fmt;

use super::matrix::{SparseMatrix, SparseVec};
use super::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectorError {
    /// Two of the supplied operators fail to commute (their indices).
    NonCommuting(usize, usize),
    /// Operator `i` does not have the declared order.
    WrongOrder(usize),
    Shape,
}

impl fmt::Display for ProjectorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectorError::NonCommuting(i, j) => {
                write!(f, "operators {} and {} do not commute", i, j)
            }
            ProjectorError::WrongOrder(i) => write!(f, "operator {} violates its declared order", i),
            ProjectorError::Shape => write!(f, "operators must be square and of equal size"),
        }
    }
}

/// Projector onto the joint eigenspace on which operator `i` acts by
/// `zeta_{m_i}^{chars_i}`:
///
/// `P = prod_i (1/m_i) sum_j zeta_{m_i}^(-chars_i * j) ops_i^j`
pub fn simultaneous_projector(
    ops: &[SparseMatrix],
    orders: &[u32],
    chars: &[i64],
) -> Result<SparseMatrix, ProjectorError> {
    assert_eq!(ops.len(), orders.len());
    assert_eq!(ops.len(), chars.len());
    let Some(first) = ops.first() else {
        return Err(ProjectorError::Shape);
    };
    let n = first.rows;
    for op in ops {
        if op.rows != n || op.cols != n {
            return Err(ProjectorError::Shape);
        }
    }
    for i in 0..ops.len() {
        for j in i + 1..ops.len() {
            if !ops[i].commutes_with(&ops[j]) {
                return Err(ProjectorError::NonCommuting(i, j));
            }
        }
    }
    for (i, op) in ops.iter().enumerate() {
        if op.pow(orders[i]) != SparseMatrix::identity(n) {
            return Err(ProjectorError::WrongOrder(i));
        }
    }

    let mut proj = SparseMatrix::identity(n);
    for (i, op) in ops.iter().enumerate() {
        let m = orders[i];
        let mut sum = SparseMatrix::new(n, n);
        let mut power = SparseMatrix::identity(n);
        for j in 0..m {
            let phase = Scalar::root_of_unity(m, -(chars[i] * j as i64));
            sum = sum.add(&power.scale(&phase));
            power = power.mul(op);
        }
        let factor = sum.scale(&Scalar::rational(1, m as i64));
        proj = proj.mul(&factor);
    }
    Ok(proj)
}

/// Basis of the image of an idempotent, as the kernel of `P - Id`.
pub fn image_basis(projector: &SparseMatrix) -> Vec<SparseVec> {
    let shifted = projector.sub(&SparseMatrix::identity(projector.rows));
    shifted.kernel_basis()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_projector_for_trivial_character() {
        let id = SparseMatrix::identity(3);
        let p = simultaneous_projector(std::slice::from_ref(&id), &[1], &[0]).unwrap();
        assert_eq!(p, id);
        assert_eq!(image_basis(&p).len(), 3);
    }

    #[test]
    fn order_two_sign_operator_splits_evenly() {
        // diag(1, -1, 1, -1)
        let mut op = SparseMatrix::identity(4);
        op.set(1, 1, Scalar::from_int(-1));
        op.set(3, 3, Scalar::from_int(-1));
        let p0 = simultaneous_projector(&[op.clone()], &[2], &[0]).unwrap();
        let p1 = simultaneous_projector(&[op.clone()], &[2], &[1]).unwrap();
        assert_eq!(image_basis(&p0).len(), 2);
        assert_eq!(image_basis(&p1).len(), 2);
        // Partition of unity and orthogonality.
        assert_eq!(p0.add(&p1), SparseMatrix::identity(4));
        assert!(p0.mul(&p1).is_zero());
        assert_eq!(p0.mul(&p0), p0);
    }

    #[test]
    fn wrong_order_reported() {
        let mut op = SparseMatrix::identity(2);
        op.set(0, 0, Scalar::from_int(2));
        let err = simultaneous_projector(&[op], &[2], &[0]).unwrap_err();
        assert_eq!(err, ProjectorError::WrongOrder(0));
    }

    #[test]
    fn non_commuting_reported() {
        let mut a = SparseMatrix::new(2, 2);
        a.set(0, 1, Scalar::one());
        a.set(1, 0, Scalar::one());
        let mut b = SparseMatrix::identity(2);
        b.set(1, 1, Scalar::from_int(-1));
        let err = simultaneous_projector(&[a, b], &[2, 2], &[0, 0]).unwrap_err();
        assert_eq!(err, ProjectorError::NonCommuting(0, 1));
    }
}
