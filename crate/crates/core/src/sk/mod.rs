//! Solovay-Kitaev refinement of single-qubit weaves.
//!
//! Everything happens on the phase-free qubit block, i.e. on unit quaternions up to sign,
//! where the distance `min |q -+ q'|` is exactly the phase-free operator distance.

mod net;

use serde::{Deserialize, Serialize};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::su2::{from_unitary, half_angle, projective_distance, Quat};

pub use net::{random_rotation, BaseNet, NetEntry, NetFile};

/// Largest rotation angle (radians) the commutator step accepts.
pub const ANGLE_GUARD: f64 = std::f64::consts::FRAC_PI_2;

/// Unit quaternion for a rotation by `angle` about `axis`.
pub fn rotation(axis: [f64; 3], angle: f64) -> Quat {
    let n = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    if n == 0.0 || angle == 0.0 {
        return Quat::identity();
    }
    let (s, c) = (angle / 2.0).sin_cos();
    Quat::new(c, s * axis[0] / n, s * axis[1] / n, s * axis[2] / n)
}

/// Rotation angle in `[0, pi]`, ignoring the sign of `q`.
pub fn rotation_angle(q: &Quat) -> f64 {
    let a = 2.0 * half_angle(q);
    a.min(2.0 * std::f64::consts::PI - a)
}

/// `V W V^-1 W^-1 = delta` with both factors rotated by about `sqrt(angle(delta))`.
///
/// The balanced construction: rotations by `phi` about x and y have a commutator whose angle
/// `theta` satisfies `sin(theta/2) = 2 s sqrt(1 - s^2)` with `s = sin^2(phi/2)`; a common
/// conjugation then carries its axis onto the axis of `delta`.
pub fn group_commutator_decompose(delta: &Quat) -> Result<(Quat, Quat)> {
    let delta = if delta.w < 0.0 { -delta } else { *delta };
    let theta = rotation_angle(&delta);
    if theta > ANGLE_GUARD {
        return Err(Error::AngleGuard(theta));
    }
    if theta < 1e-15 {
        return Ok((Quat::identity(), Quat::identity()));
    }
    let st = (theta / 2.0).sin();
    let s = ((1.0 - (1.0 - st * st).sqrt()) / 2.0).sqrt();
    let phi = 2.0 * s.sqrt().asin();
    let v0 = rotation([1.0, 0.0, 0.0], phi);
    let w0 = rotation([0.0, 1.0, 0.0], phi);
    let c = v0 * w0 * v0.conjugate() * w0.conjugate();
    let from = c.vector().normalize();
    let to = delta.vector().normalize();
    let cross = from.cross(&to);
    let dot = from.dot(&to).clamp(-1.0, 1.0);
    let conj = if cross.norm() < 1e-15 {
        if dot > 0.0 {
            Quat::identity()
        } else {
            // half turn about any axis orthogonal to `from`
            let ortho = if from.x.abs() < 0.9 { nalgebra::Vector3::x() } else { nalgebra::Vector3::y() };
            let ax = from.cross(&ortho).normalize();
            Quat::new(0.0, ax.x, ax.y, ax.z)
        }
    } else {
        rotation([cross.x, cross.y, cross.z], dot.acos())
    };
    Ok((conj * v0 * conj.conjugate(), conj * w0 * conj.conjugate()))
}

/// How depth-0 approximations are taken from the net.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Lookup {
    /// Nearest single entry.
    Single,
    /// Nearest product of two entries.
    #[default]
    Paired,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkParams {
    pub depth: usize,
    pub lookup: Lookup,
}

impl SkParams {
    pub fn new(depth: usize) -> Self {
        SkParams { depth, lookup: Lookup::default() }
    }
}

/// Depth guard: length grows about fivefold per level.
pub const MAX_DEPTH: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkLevel {
    pub depth: usize,
    pub epsilon: f64,
    pub length: u64,
}

#[derive(Clone, Debug)]
pub struct SkResult {
    pub word: BraidWord,
    pub epsilon: f64,
    /// The approximation after each level, depth 0 first.
    pub trace: Vec<SkLevel>,
}

#[derive(Clone)]
struct Approx {
    word: BraidWord,
    q: Quat,
}

impl Approx {
    fn inverse(&self) -> Approx {
        Approx { word: self.word.inverse(), q: self.q.conjugate() }
    }

    /// `self` followed in time by `next`.
    fn then(&self, next: &Approx) -> Approx {
        let mut word = self.word.clone();
        word.crossings.extend_from_slice(&next.word.crossings);
        Approx { word: word.free_reduce(), q: next.q * self.q }
    }
}

struct Refiner<'a> {
    net: &'a BaseNet,
    lookup: Lookup,
}

impl Refiner<'_> {
    fn base(&self, q: &Quat) -> Approx {
        let e = &self.net.entries;
        match self.lookup {
            Lookup::Single => {
                let (i, _) = self.net.nearest(q);
                Approx { word: e[i].word.clone(), q: e[i].rotation }
            }
            Lookup::Paired => {
                let (a, b, _) = self.net.nearest_pair(q);
                let first = Approx { word: e[a].word.clone(), q: e[a].rotation };
                first.then(&Approx { word: e[b].word.clone(), q: e[b].rotation })
            }
        }
    }

    /// Approximations of `q` at depths `0..=depth`.
    fn chain(&self, q: &Quat, depth: usize) -> Result<Vec<Approx>> {
        if depth == 0 {
            return Ok(vec![self.base(q)]);
        }
        let mut levels = self.chain(q, depth - 1)?;
        let prev = levels.last().expect("depth 0 is always present").clone();
        let delta = q * prev.q.conjugate();
        let (v, w) = group_commutator_decompose(&delta)?;
        let va = self.chain(&v, depth - 1)?.pop().expect("nonempty");
        let wa = self.chain(&w, depth - 1)?.pop().expect("nonempty");
        let next = prev.then(&wa.inverse()).then(&va.inverse()).then(&wa).then(&va);
        levels.push(next);
        Ok(levels)
    }
}

/// Refine a weave approximation of the 2x2 qubit-block gate `target` (phase ignored).
///
/// Returns a return-to-start weave from the net's slot, with the distance reached at every
/// level. The net must contain the empty word.
pub fn sk_refine(target: &CMatrix, params: &SkParams, net: &BaseNet) -> Result<SkResult> {
    if target.shape() != (2, 2) {
        return Err(Error::DimensionMismatch { left: target.nrows(), right: 2 });
    }
    if params.depth > MAX_DEPTH {
        return Err(Error::BudgetExceeded(format!("depth {} exceeds the limit {MAX_DEPTH}", params.depth)));
    }
    if net.is_empty() {
        return Err(Error::NetFile("the net is empty".into()));
    }
    let (_, q) = from_unitary(target);
    let levels = Refiner { net, lookup: params.lookup }.chain(&q, params.depth)?;
    let trace = levels
        .iter()
        .enumerate()
        .map(|(depth, a)| SkLevel { depth, epsilon: projective_distance(&a.q, &q), length: a.word.length() })
        .collect();
    let last = levels.into_iter().last().expect("nonempty");
    Ok(SkResult { epsilon: projective_distance(&last.q, &q), word: last.word, trace })
}
