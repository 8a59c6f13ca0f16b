//! Three-anyon unitaries as `(exponent sum, unit quaternion)` pairs.
//!
//! Every three-anyon braid acts as `e^{-i pi S/10} M(q)` on the qubit block and as
//! `e^{3 pi i S/5}` on the noncomputational state, where `S` is the exponent sum.

use std::f64::consts::PI;

use crate::algebra::{representation, R_ONE_ANGLE, R_ZERO_ANGLE};
use crate::braid::target::{qubit_block, GateTarget, TargetMode, NC_INDEX};
use crate::error::{Error, Result};
use crate::matrix::{cis, op_norm, CMatrix, C64};
use crate::su2::{from_unitary, half_angle, projective_distance, to_matrix, Quat};

use super::metric_fast::{op_norm2, phase_free_eps};

/// Half the block determinant phase of one elementary crossing.
const HALF_DET: f64 = (R_ZERO_ANGLE + R_ONE_ANGLE) / 2.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Elem {
    pub s: i32,
    pub q: Quat,
}

impl Elem {
    pub fn identity() -> Self {
        Elem { s: 0, q: Quat::identity() }
    }

    /// `self` followed in time by `next`.
    #[inline]
    pub fn then(&self, next: &Elem) -> Elem {
        Elem { s: self.s + next.s, q: next.q * self.q }
    }

    pub fn block_phase(&self) -> f64 {
        HALF_DET * self.s as f64
    }

    pub fn nc(&self) -> C64 {
        cis(R_ONE_ANGLE * self.s as f64)
    }

    pub fn block(&self) -> CMatrix {
        to_matrix(&self.q) * cis(self.block_phase())
    }

    pub fn matrix(&self) -> CMatrix {
        let b = self.block();
        let mut m = CMatrix::zeros(3, 3);
        m.view_mut((0, 0), (2, 2)).copy_from(&b);
        m[(NC_INDEX, NC_INDEX)] = self.nc();
        m
    }
}

/// Generator powers `sigma_g^e` for `g` in 1..=2 and folded `e` in -4..=5.
#[derive(Clone, Debug)]
pub struct GeneratorTable {
    table: [[Elem; 10]; 2],
}

impl GeneratorTable {
    pub fn new() -> Result<Self> {
        let rep = representation(3)?;
        let mut table = [[Elem::identity(); 10]; 2];
        for g in 1..=2usize {
            for e in -4..=5i32 {
                let block = qubit_block(rep.power(g, e));
                let m = block * cis(-HALF_DET * e as f64);
                let q = Quat::new(m[(0, 0)].re, -m[(1, 0)].im, m[(1, 0)].re, -m[(0, 0)].im);
                table[g - 1][(e + 4) as usize] = Elem { s: e, q: q.normalize() };
            }
        }
        Ok(GeneratorTable { table })
    }

    #[inline]
    pub fn get(&self, g: u8, e: i8) -> &Elem {
        &self.table[g as usize - 1][(e + 4) as usize]
    }

    pub fn word(&self, crossings: &[(u8, i8)]) -> Elem {
        crossings.iter().fold(Elem::identity(), |acc, &(g, e)| acc.then(self.get(g, e)))
    }
}

/// A target prepared for repeated distance evaluations.
#[derive(Clone, Debug)]
pub struct FastTarget {
    beta: f64,
    q: Quat,
    block: CMatrix,
    nc: Option<C64>,
    phase_free: bool,
}

impl FastTarget {
    pub fn new(target: &GateTarget) -> Result<Self> {
        let (block, nc) = match (target.mode, target.matrix.nrows()) {
            (TargetMode::QubitBlockOnly, 2) => (target.matrix.clone(), None),
            (TargetMode::Full, 3) => {
                let m = &target.matrix;
                let off = [(0, 2), (1, 2), (2, 0), (2, 1)].iter().map(|&ij| m[ij].norm()).fold(0.0, f64::max);
                if off > 1e-10 {
                    return Err(Error::InvalidTarget("three-anyon targets must preserve total charge".into()));
                }
                (qubit_block(m), Some(m[(NC_INDEX, NC_INDEX)]))
            }
            _ => return Err(Error::InvalidTarget("search targets are 3x3, or 2x2 in block-only mode".into())),
        };
        let (beta, q) = from_unitary(&block);
        Ok(FastTarget { beta, q, block, nc, phase_free: target.phase_free })
    }

    pub fn quat(&self) -> &Quat {
        &self.q
    }

    /// Phase-free qubit-block distance, a lower bound for [`FastTarget::eps`].
    #[inline]
    pub fn lower_bound(&self, e: &Elem) -> f64 {
        projective_distance(&self.q, &e.q)
    }

    #[inline]
    pub fn eps(&self, e: &Elem) -> f64 {
        self.eps_phase(e).0
    }

    /// Distance and aligning phase.
    pub fn eps_phase(&self, e: &Elem) -> (f64, f64) {
        match (self.phase_free, self.nc) {
            (true, None) => {
                let lb = self.lower_bound(e);
                let p = self.q.conjugate() * e.q;
                let phase = e.block_phase() - self.beta + if p.w < 0.0 { PI } else { 0.0 };
                (lb, wrap(phase))
            }
            (true, Some(nc)) => {
                let p = self.q.conjugate() * e.q;
                let half = half_angle(&p);
                let phi0 = e.block_phase() - self.beta;
                let psi = R_ONE_ANGLE * e.s as f64 - nc.arg();
                phase_free_eps(&[phi0 + half, phi0 - half, psi])
            }
            (false, nc) => {
                let d = e.block() - &self.block;
                let mut eps = op_norm2(&d);
                if let Some(nc) = nc {
                    eps = eps.max((e.nc() - nc).norm());
                }
                (eps, 0.0)
            }
        }
    }
}

fn wrap(x: f64) -> f64 {
    (x + PI).rem_euclid(2.0 * PI) - PI
}

/// Check a fast element against the dense representation.
pub fn dense_mismatch(e: &Elem, dense: &CMatrix) -> f64 {
    op_norm(&(e.matrix() - dense))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{evaluate, named_target, BraidWord};

    #[test]
    fn table_matches_dense_generators() {
        let t = GeneratorTable::new().unwrap();
        let rep = representation(3).unwrap();
        for g in 1..=2u8 {
            for e in -4..=5i8 {
                assert!(dense_mismatch(t.get(g, e), rep.power(g as usize, e as i32)) < 1e-13);
            }
        }
    }

    #[test]
    fn words_match_dense_evaluation() {
        let t = GeneratorTable::new().unwrap();
        let cs: Vec<(u8, i8)> = vec![(1, 3), (2, -2), (1, 5), (2, 1), (1, -4)];
        let w = BraidWord::from_pairs(3, &cs.iter().map(|&(g, e)| (g as usize, e as i64)).collect::<Vec<_>>()).unwrap();
        let dense = evaluate(&w, 3).unwrap().entries;
        assert!(dense_mismatch(&t.word(&cs), &dense) < 1e-12);
    }

    #[test]
    fn fast_distances_match_dense() {
        let t = GeneratorTable::new().unwrap();
        let cs: Vec<(u8, i8)> = vec![(2, 2), (1, -4), (2, 1), (1, 3)];
        let e = t.word(&cs);
        let u = e.matrix();
        for name in ["not", "identity", "s2^2", "h", "s1"] {
            for pf in [false, true] {
                let target = named_target(name).unwrap().with_phase_free(pf);
                let fast = FastTarget::new(&target).unwrap();
                let (eps, phi) = fast.eps_phase(&e);
                let (want, _) = target.epsilon(&u).unwrap();
                assert!((eps - want).abs() < 1e-12, "{name} pf={pf}: {eps} vs {want}");
                let part = target.compared_part(&u).unwrap();
                let aligned = op_norm(&(part - &target.matrix * cis(phi)));
                assert!((aligned - eps).abs() < 1e-9, "{name} pf={pf} phase");
                assert!(fast.lower_bound(&e) <= eps + 1e-15);
            }
        }
    }
}
