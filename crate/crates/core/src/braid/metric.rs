use std::f64::consts::PI;

use crate::error::Result;
use crate::matrix::{ensure_same_shape, eigenphases, is_unitary, op_norm, CMatrix, C64};

/// `||u - v||` in the operator norm.
pub fn distance(u: &CMatrix, v: &CMatrix) -> Result<f64> {
    ensure_same_shape(u, v)?;
    Ok(op_norm(&(u - v)))
}

/// Length of the shortest arc of the unit circle containing every angle.
pub fn covering_arc(angles: &[f64]) -> f64 {
    if angles.len() < 2 {
        return 0.0;
    }
    let mut a: Vec<f64> = angles.iter().map(|t| t.rem_euclid(2.0 * PI)).collect();
    a.sort_by(f64::total_cmp);
    let mut gap = a[0] + 2.0 * PI - a[a.len() - 1];
    for w in a.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    (2.0 * PI - gap).max(0.0)
}

/// Centre of the shortest covering arc and the minimax operator distance `2 sin(arc / 4)`.
pub fn phase_free_from_phases(angles: &[f64]) -> (f64, f64) {
    if angles.is_empty() {
        return (0.0, 0.0);
    }
    let mut a: Vec<f64> = angles.iter().map(|t| t.rem_euclid(2.0 * PI)).collect();
    a.sort_by(f64::total_cmp);
    // the arc starts right after the largest gap
    let n = a.len();
    let (mut best_gap, mut start) = (a[0] + 2.0 * PI - a[n - 1], 0usize);
    for k in 1..n {
        let g = a[k] - a[k - 1];
        if g > best_gap {
            best_gap = g;
            start = k;
        }
    }
    let arc = (2.0 * PI - best_gap).max(0.0);
    let centre = a[start] + arc / 2.0;
    let centre = (centre + PI).rem_euclid(2.0 * PI) - PI;
    (2.0 * (arc / 4.0).sin(), centre)
}

/// `min_phi ||u - e^{i phi} v||` and the minimizing `phi`.
///
/// For unitary inputs this is exact: the eigenphases of `v^dagger u` are covered by the
/// shortest arc and `phi` is its centre. Other inputs fall back to [`phase_distance_numeric`].
pub fn phase_distance(u: &CMatrix, v: &CMatrix) -> Result<(f64, f64)> {
    ensure_same_shape(u, v)?;
    if u.is_empty() {
        return Ok((0.0, 0.0));
    }
    if is_unitary(u, 1e-9) && is_unitary(v, 1e-9) {
        let w = v.adjoint() * u;
        return Ok(phase_free_from_phases(&eigenphases(&w)));
    }
    phase_distance_numeric(u, v)
}

/// Dense scan over `phi` followed by golden-section refinement to 1e-10 in `phi`.
pub fn phase_distance_numeric(u: &CMatrix, v: &CMatrix) -> Result<(f64, f64)> {
    ensure_same_shape(u, v)?;
    let f = |phi: f64| op_norm(&(u - v * C64::from_polar(1.0, phi)));
    const SCAN: usize = 720;
    let step = 2.0 * PI / SCAN as f64;
    let samples: Vec<f64> = (0..SCAN).map(|k| f(-PI + k as f64 * step)).collect();
    let mut order: Vec<usize> = (0..SCAN).collect();
    order.sort_by(|&a, &b| samples[a].total_cmp(&samples[b]));
    let mut best = (f64::INFINITY, 0.0);
    for &k in order.iter().take(4) {
        let centre = -PI + k as f64 * step;
        let (mut lo, mut hi) = (centre - step, centre + step);
        let g = (5f64.sqrt() - 1.0) / 2.0;
        let mut x1 = hi - g * (hi - lo);
        let mut x2 = lo + g * (hi - lo);
        let (mut f1, mut f2) = (f(x1), f(x2));
        while hi - lo > 1e-10 {
            if f1 <= f2 {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - g * (hi - lo);
                f1 = f(x1);
            } else {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + g * (hi - lo);
                f2 = f(x2);
            }
        }
        let phi = (lo + hi) / 2.0;
        let val = f(phi);
        if val < best.0 {
            best = (val, (phi + PI).rem_euclid(2.0 * PI) - PI);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::matrix::{cis, diag, identity};

    #[test]
    fn distance_examples() {
        let one = C64::new(1.0, 0.0);
        assert!((distance(&identity(2), &diag(&[one, -one])).unwrap() - 2.0).abs() < 1e-14);
        for theta in [0.1, 1.0, 2.5, 3.1] {
            let d = distance(&identity(2), &(identity(2) * cis(theta))).unwrap();
            assert!((d - 2.0 * (theta / 2.0f64).sin().abs()).abs() < 1e-13);
        }
        assert!(matches!(distance(&identity(2), &identity(3)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn phase_distance_closed_form() {
        let one = C64::new(1.0, 0.0);
        let v = diag(&[one, cis(PI / 5.0)]);
        let want = 2.0 * (PI / 20.0).sin();
        let (e, _) = phase_distance(&identity(2), &v).unwrap();
        assert!((e - want).abs() < 1e-13);
        let (n, _) = phase_distance_numeric(&identity(2), &v).unwrap();
        assert!((n - want).abs() < 1e-9);
    }

    #[test]
    fn arc_wraps_around() {
        assert!((covering_arc(&[3.0, -3.0]) - (2.0 * PI - 6.0)).abs() < 1e-14);
        let (e, c) = phase_free_from_phases(&[3.0, -3.0]);
        assert!((c.abs() - PI).abs() < 1e-12);
        assert!((e - 2.0 * ((2.0 * PI - 6.0) / 4.0).sin()).abs() < 1e-14);
    }
}
