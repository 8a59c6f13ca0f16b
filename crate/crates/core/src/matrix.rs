//! Small dense complex matrix helpers on top of nalgebra.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn from_rows(rows: &[&[C64]]) -> CMatrix {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    CMatrix::from_fn(n, m, |i, j| rows[i][j])
}

pub fn diag(entries: &[C64]) -> CMatrix {
    let n = entries.len();
    CMatrix::from_fn(n, n, |i, j| if i == j { entries[i] } else { C64::new(0.0, 0.0) })
}

pub(crate) fn ensure_same_shape(a: &CMatrix, b: &CMatrix) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(Error::DimensionMismatch { left: a.nrows().max(a.ncols()), right: b.nrows().max(b.ncols()) });
    }
    Ok(())
}

/// Operator norm: the largest singular value.
pub fn op_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.singular_values().iter().cloned().fold(0.0, f64::max)
}

pub fn unitarity_defect(u: &CMatrix) -> f64 {
    let n = u.nrows();
    op_norm(&(u.adjoint() * u - identity(n)))
}

pub fn is_unitary(u: &CMatrix, tol: f64) -> bool {
    u.is_square() && unitarity_defect(u) <= tol
}

/// Principal submatrix on the given index set (rows and columns).
pub fn restrict(m: &CMatrix, rows: &[usize], cols: &[usize]) -> CMatrix {
    CMatrix::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])])
}

/// Integer power of a square matrix by repeated squaring; negative powers use the adjoint,
/// so they are only meaningful for unitaries.
pub fn unitary_power(u: &CMatrix, e: i64) -> CMatrix {
    let base = if e < 0 { u.adjoint() } else { u.clone() };
    let mut k = e.unsigned_abs();
    let mut acc = identity(u.nrows());
    let mut sq = base;
    while k > 0 {
        if k & 1 == 1 {
            acc = &sq * &acc;
        }
        sq = &sq * &sq;
        k >>= 1;
    }
    acc
}

/// Eigenvalues of a square complex matrix via the complex Schur form.
pub fn eigenvalues(m: &CMatrix) -> Vec<C64> {
    if m.is_empty() {
        return Vec::new();
    }
    let schur = nalgebra::Schur::new(m.clone());
    let (_, t) = schur.unpack();
    (0..t.nrows()).map(|i| t[(i, i)]).collect()
}

/// Phases (in (-pi, pi]) of the eigenvalues of a unitary.
pub fn eigenphases(u: &CMatrix) -> Vec<f64> {
    eigenvalues(u).into_iter().map(|z| z.arg()).collect()
}
