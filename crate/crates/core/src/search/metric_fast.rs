use std::f64::consts::PI;

use crate::matrix::CMatrix;

/// Largest singular value of a 2x2 matrix.
#[inline]
pub fn op_norm2(d: &CMatrix) -> f64 {
    // largest eigenvalue of D^dagger D, written without cancellation
    let a = d[(0, 0)].norm_sqr() + d[(1, 0)].norm_sqr();
    let b = d[(0, 1)].norm_sqr() + d[(1, 1)].norm_sqr();
    let c = d[(0, 0)].conj() * d[(0, 1)] + d[(1, 0)].conj() * d[(1, 1)];
    let h = (a - b) / 2.0;
    ((a + b) / 2.0 + (h * h + c.norm_sqr()).sqrt()).sqrt()
}

/// Allocation-free version of the covering-arc distance for three phases.
#[inline]
pub fn phase_free_eps(angles: &[f64; 3]) -> (f64, f64) {
    let tau = 2.0 * PI;
    let mut a = [angles[0].rem_euclid(tau), angles[1].rem_euclid(tau), angles[2].rem_euclid(tau)];
    if a[0] > a[1] {
        a.swap(0, 1);
    }
    if a[1] > a[2] {
        a.swap(1, 2);
    }
    if a[0] > a[1] {
        a.swap(0, 1);
    }
    let gaps = [a[0] + tau - a[2], a[1] - a[0], a[2] - a[1]];
    let mut k = 0;
    for j in 1..3 {
        if gaps[j] > gaps[k] {
            k = j;
        }
    }
    let arc = (tau - gaps[k]).max(0.0);
    let centre = a[k] + arc / 2.0;
    (2.0 * (arc / 4.0).sin(), (centre + PI).rem_euclid(tau) - PI)
}
