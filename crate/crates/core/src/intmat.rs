//! Small dense integer matrices, stored as rows.

use num_traits::Zero;

use crate::field::{rational_to_i64, Field, Rational};
use crate::matrix::{IntMatrix, Matrix};

pub fn from_columns(columns: &[Vec<i64>]) -> IntMatrix {
    let n = columns.first().map_or(0, Vec::len);
    (0..n).map(|i| columns.iter().map(|c| c[i]).collect()).collect()
}

pub fn column(m: &IntMatrix, c: usize) -> Vec<i64> {
    m.iter().map(|row| row[c]).collect()
}

pub fn columns(m: &IntMatrix) -> Vec<Vec<i64>> {
    let cols = m.first().map_or(0, Vec::len);
    (0..cols).map(|c| column(m, c)).collect()
}

pub fn transpose(m: &IntMatrix) -> IntMatrix {
    columns(m)
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|c| (0..inner).map(|k| row[k] * b[k][c]).sum()).collect())
        .collect()
}

pub fn to_rational(m: &IntMatrix) -> Matrix<Rational> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    Matrix::from_fn(rows, cols, |r, c| Rational::from_i64(m[r][c]))
}

pub fn from_rational(m: &Matrix<Rational>) -> Option<IntMatrix> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| rational_to_i64(&m[(r, c)])).collect())
        .collect()
}

pub fn determinant(m: &IntMatrix) -> i64 {
    rational_to_i64(&to_rational(m).determinant()).expect("integer determinant")
}

/// `(M^{-1})^T` when `M` is invertible over the integers.
pub fn inverse_transpose(m: &IntMatrix) -> Option<IntMatrix> {
    let inv = to_rational(m).inverse()?;
    from_rational(&inv.transpose())
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero_vector(v: &[i64]) -> bool {
    v.iter().all(Zero::is_zero)
}
