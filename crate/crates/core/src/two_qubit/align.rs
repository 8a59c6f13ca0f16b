//! Fitting diagonal single-qubit phase corrections to a two-qubit block.
//!
//! The assembled gates match their ideal only up to single-qubit phase rotations. For a
//! 4x4 action `a` (basis `|00>, |01>, |10>, |11>`, control bit first) and ideal `g`, the
//! correction family is `e^{i gamma} (D(control) ⊗ D(target_left)) g (I ⊗ D(target_right))`
//! with `D(b) = diag(1, e^{i b})`.

use std::f64::consts::PI;

use argmin::core::{CostFunction, Executor, State};
use nalgebra::{DMatrix, DVector};
use argmin::solver::neldermead::NelderMead;
use serde::{Deserialize, Serialize};

use crate::matrix::{cis, diag, op_norm, CMatrix};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PhaseAlignment {
    pub gamma: f64,
    pub control: f64,
    pub target_left: f64,
    pub target_right: f64,
}

impl PhaseAlignment {
    fn from_params(p: &[f64]) -> Self {
        PhaseAlignment { gamma: p[0], control: p[1], target_left: p[2], target_right: p[3] }
    }

    fn params(&self) -> Vec<f64> {
        vec![self.gamma, self.control, self.target_left, self.target_right]
    }

    /// `(left, right)` correction matrices.
    pub fn corrections(&self) -> (CMatrix, CMatrix) {
        let (u, b1, b2) = (self.control, self.target_left, self.target_right);
        let g = cis(self.gamma);
        let left = diag(&[g, g * cis(b1), g * cis(u), g * cis(u + b1)]);
        let right = diag(&[cis(0.0), cis(b2), cis(0.0), cis(b2)]);
        (left, right)
    }

    /// The ideal gate dressed with these corrections.
    pub fn apply(&self, ideal: &CMatrix) -> CMatrix {
        let (l, r) = self.corrections();
        l * ideal * r
    }

    /// Strip the corrections from an actual action: `L^-1 a R^-1`.
    pub fn strip(&self, actual: &CMatrix) -> CMatrix {
        let (l, r) = self.corrections();
        l.adjoint() * actual * r.adjoint()
    }
}

struct Mismatch<'a> {
    actual: &'a CMatrix,
    ideal: &'a CMatrix,
}

impl CostFunction for Mismatch<'_> {
    type Param = Vec<f64>;
    type Output = f64;

    fn cost(&self, p: &Vec<f64>) -> Result<f64, argmin::core::Error> {
        let fit = PhaseAlignment::from_params(p).apply(self.ideal);
        Ok(op_norm(&(self.actual - fit)))
    }
}

/// Closed-form starting point from the entry phases of `actual` on the support of `ideal`.
///
/// For a monomial ideal the corrected entry `(i, j)` has phase
/// `gamma + control*c(i) + target_left*t(i) + target_right*t(j) + arg g(i, j)`, where `c` and
/// `t` are the control and target bits. Column 0 fixes `gamma`; the other three columns give
/// a 3x3 linear system solved in the least-squares sense. Halving can land a correction half a
/// turn off, so the eight shifts by `pi` are scored and the best kept.
fn seed(actual: &CMatrix, ideal: &CMatrix) -> PhaseAlignment {
    let wrap = |x: f64| (x + PI).rem_euclid(2.0 * PI) - PI;
    let mut theta = [0.0; 4];
    let mut row_of = [0usize; 4];
    for j in 0..4 {
        let i = (0..4).max_by(|&a, &b| ideal[(a, j)].norm().total_cmp(&ideal[(b, j)].norm())).unwrap();
        row_of[j] = i;
        theta[j] = (actual[(i, j)] * ideal[(i, j)].conj()).arg();
    }
    let bit = |k: usize, b: usize| ((k >> b) & 1) as f64;
    let gamma = theta[0];
    let a = DMatrix::from_fn(3, 3, |r, k| {
        let (i, j) = (row_of[r + 1], r + 1);
        [bit(i, 1), bit(i, 0), bit(j, 0)][k]
    });
    let t = DVector::from_fn(3, |r, _| wrap(theta[r + 1] - gamma));
    let x = a.svd(true, true).solve(&t, 1e-9).unwrap_or_else(|_| DVector::zeros(3));
    let problem = Mismatch { actual, ideal };
    let mut best = (f64::INFINITY, PhaseAlignment::default());
    for mask in 0..8u32 {
        let shift = |k: u32| if mask >> k & 1 == 1 { PI } else { 0.0 };
        let cand = PhaseAlignment {
            gamma,
            control: wrap(x[0] + shift(0)),
            target_left: wrap(x[1] + shift(1)),
            target_right: wrap(x[2] + shift(2)),
        };
        let cost = problem.cost(&cand.params()).unwrap_or(f64::INFINITY);
        if cost < best.0 {
            best = (cost, cand);
        }
    }
    best.1
}

/// Minimize `||actual - L ideal R||` over the correction family.
///
/// Returns the minimal distance and the corrections. The search starts from the closed-form
/// seed and polishes it with Nelder-Mead.
pub fn align_phases(actual: &CMatrix, ideal: &CMatrix) -> (f64, PhaseAlignment) {
    assert_eq!(actual.shape(), (4, 4), "two-qubit block must be 4x4");
    let start = seed(actual, ideal);
    let problem = Mismatch { actual, ideal };
    let mut best = (problem.cost(&start.params()).unwrap_or(f64::INFINITY), start);
    for scale in [1e-2, 1e-4] {
        let x0 = best.1.params();
        let mut simplex = vec![x0.clone()];
        for k in 0..4 {
            let mut v = x0.clone();
            v[k] += scale;
            simplex.push(v);
        }
        let solver = match NelderMead::new(simplex).with_sd_tolerance(1e-15) {
            Ok(s) => s,
            Err(_) => continue,
        };
        let run = Executor::new(Mismatch { actual, ideal }, solver).configure(|s| s.max_iters(2000)).run();
        if let Ok(res) = run {
            let state = res.state();
            if let Some(p) = state.get_best_param() {
                let cost = state.get_best_cost();
                if cost < best.0 {
                    best = (cost, PhaseAlignment::from_params(p));
                }
            }
        }
    }
    best
}
