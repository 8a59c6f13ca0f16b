//! Unit quaternions as SU(2) matrices.
//!
//! `q = w + x i + y j + z k` maps to `w I - i (x X + y Y + z Z)`, which is a group
//! homomorphism. A 2x2 unitary `U` splits as `e^{i beta} M(q)` with `q` fixed up to sign.

use nalgebra::Quaternion;

use crate::matrix::{CMatrix, C64};

pub type Quat = Quaternion<f64>;

pub fn to_matrix(q: &Quat) -> CMatrix {
    let (w, x, y, z) = (q.w, q.i, q.j, q.k);
    CMatrix::from_row_slice(2, 2, &[C64::new(w, -z), C64::new(-y, -x), C64::new(y, -x), C64::new(w, z)])
}

/// Split a 2x2 unitary into `(beta, q)` with `u = e^{i beta} M(q)`.
pub fn from_unitary(u: &CMatrix) -> (f64, Quat) {
    let det = u[(0, 0)] * u[(1, 1)] - u[(0, 1)] * u[(1, 0)];
    let beta = det.arg() / 2.0;
    let m = u * C64::from_polar(1.0, -beta);
    let q = Quat::new(m[(0, 0)].re, -m[(1, 0)].im, m[(1, 0)].re, -m[(0, 0)].im);
    (beta, q.normalize())
}

/// Half the rotation angle of `q`, in `[0, pi]`.
pub fn half_angle(q: &Quat) -> f64 {
    q.vector().norm().atan2(q.w)
}

/// `min(|p - q|, |p + q|)`: the phase-free operator distance of the two SU(2) matrices.
pub fn projective_distance(p: &Quat, q: &Quat) -> f64 {
    let d = (p - q).norm();
    let s = (p + q).norm();
    d.min(s)
}
