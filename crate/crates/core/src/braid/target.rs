use crate::algebra::representation;
use crate::braid::metric::{distance, phase_distance};
use crate::error::{Error, Result};
use crate::matrix::{from_rows, identity, is_unitary, restrict, unitary_power, CMatrix, C64};
use crate::su2::{to_matrix, Quat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum TargetMode {
    /// Compare whole matrices.
    Full,
    /// Compare only the 2x2 computational block of a three-anyon unitary.
    QubitBlockOnly,
}

#[derive(Clone, Debug)]
pub struct GateTarget {
    pub matrix: CMatrix,
    pub mode: TargetMode,
    pub phase_free: bool,
}

/// Indices of `|0_L>, |1_L>` in the three-anyon basis.
pub const QUBIT_BLOCK: [usize; 2] = [0, 1];
/// Index of the noncomputational three-anyon state.
pub const NC_INDEX: usize = 2;

pub fn qubit_block(u: &CMatrix) -> CMatrix {
    restrict(u, &QUBIT_BLOCK, &QUBIT_BLOCK)
}

impl GateTarget {
    pub fn new(matrix: CMatrix, mode: TargetMode, phase_free: bool) -> Result<Self> {
        if !matrix.is_square() || !is_unitary(&matrix, 1e-10) {
            return Err(Error::InvalidTarget("target matrix is not unitary".into()));
        }
        if mode == TargetMode::QubitBlockOnly && matrix.nrows() != 2 {
            return Err(Error::InvalidTarget("block-only targets must be 2x2".into()));
        }
        Ok(GateTarget { matrix, mode, phase_free })
    }

    pub fn full(matrix: CMatrix, phase_free: bool) -> Result<Self> {
        Self::new(matrix, TargetMode::Full, phase_free)
    }

    pub fn block(matrix: CMatrix, phase_free: bool) -> Result<Self> {
        Self::new(matrix, TargetMode::QubitBlockOnly, phase_free)
    }

    /// Convert to block-only mode, taking the qubit block of a 3x3 target.
    pub fn into_block_only(self) -> Result<Self> {
        match (self.mode, self.matrix.nrows()) {
            (TargetMode::QubitBlockOnly, _) => Ok(self),
            (TargetMode::Full, 3) => Self::block(qubit_block(&self.matrix), self.phase_free),
            _ => Err(Error::InvalidTarget("only 3x3 targets have a qubit block".into())),
        }
    }

    pub fn with_phase_free(mut self, phase_free: bool) -> Self {
        self.phase_free = phase_free;
        self
    }

    /// The part of `u` this target constrains.
    pub fn compared_part(&self, u: &CMatrix) -> Result<CMatrix> {
        match self.mode {
            TargetMode::Full => Ok(u.clone()),
            TargetMode::QubitBlockOnly if u.nrows() == 3 => Ok(qubit_block(u)),
            TargetMode::QubitBlockOnly if u.nrows() == 2 => Ok(u.clone()),
            TargetMode::QubitBlockOnly => Err(Error::DimensionMismatch { left: u.nrows(), right: 3 }),
        }
    }

    /// Distance of `u` from the target and the aligning phase (0 unless phase-free).
    pub fn epsilon(&self, u: &CMatrix) -> Result<(f64, f64)> {
        let part = self.compared_part(u)?;
        if self.phase_free {
            phase_distance(&part, &self.matrix)
        } else {
            Ok((distance(&part, &self.matrix)?, 0.0))
        }
    }
}

pub fn pauli_x() -> CMatrix {
    let (o, l) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
    from_rows(&[&[o, l], &[l, o]])
}

pub fn hadamard() -> CMatrix {
    let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    from_rows(&[&[s, s], &[s, -s]])
}

/// `exp(-i angle/2 n.sigma)` for a unit axis `n`.
pub fn axis_rotation(axis: [f64; 3], angle: f64) -> Result<CMatrix> {
    let norm = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]).sqrt();
    if !(norm.is_finite() && norm > 0.0) || !angle.is_finite() {
        return Err(Error::InvalidTarget("rotation axis must be a nonzero finite vector".into()));
    }
    let (s, c) = (angle / 2.0).sin_cos();
    let q = Quat::new(c, s * axis[0] / norm, s * axis[1] / norm, s * axis[2] / norm);
    Ok(to_matrix(&q))
}

/// `sigma_index^exponent` on three anyons.
pub fn sigma_power3(index: usize, exponent: i64) -> Result<CMatrix> {
    let rep = representation(3)?;
    if !(1..=2).contains(&index) {
        return Err(Error::GeneratorOutOfRange { index: index as i64, strands: 3 });
    }
    Ok(unitary_power(rep.generator(index), exponent))
}

/// Targets by name: `not`/`x`, `identity`/`id`, `h`, `s1^k`/`s2^k`, `rot:nx,ny,nz,angle`.
pub fn named_target(name: &str) -> Result<GateTarget> {
    let lower = name.trim().to_ascii_lowercase();
    match lower.as_str() {
        "not" | "x" => return GateTarget::block(pauli_x(), true),
        "identity" | "id" => return GateTarget::full(identity(3), true),
        "h" | "hadamard" => return GateTarget::block(hadamard(), true),
        _ => {}
    }
    if let Some(spec) = lower.strip_prefix("rot:") {
        let parts: Vec<f64> = spec
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidTarget(format!("cannot parse rotation {name:?}")))?;
        if parts.len() != 4 {
            return Err(Error::InvalidTarget("rotation needs nx,ny,nz,angle".into()));
        }
        return GateTarget::block(axis_rotation([parts[0], parts[1], parts[2]], parts[3])?, true);
    }
    if let Some(rest) = lower.strip_prefix('s') {
        let (idx, exp) = match rest.split_once('^') {
            Some((i, e)) => (i, e),
            None => (rest, "1"),
        };
        if let (Ok(i), Ok(e)) = (idx.parse::<usize>(), exp.parse::<i64>()) {
            return GateTarget::full(sigma_power3(i, e)?, false);
        }
    }
    Err(Error::InvalidTarget(format!("unknown target {name:?}")))
}
