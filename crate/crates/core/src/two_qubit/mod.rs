//! Two-qubit gates from weaves of the control pair.
//!
//! The control qubit is anyons 1-3 and the target qubit anyons 4-6. The control pair is
//! anyons 1 and 2: its q-spin is the control bit. Every stage moves the pair as a single
//! object through a group of three effective objects on four consecutive strands, so its
//! action is trivial when the pair has q-spin 0.

mod align;
mod lift;

use serde::{Deserialize, Serialize};

use crate::algebra::{computational_embedding, Embedding, QSpin};
use crate::braid::{evaluate, format, BraidWord, GateTarget, TargetMode, Weave, NC_INDEX};
use crate::error::{Error, Result};
use crate::matrix::{c, cis, diag, from_rows, op_norm, restrict, CMatrix};

pub use align::{align_phases, PhaseAlignment};
pub use lift::{lift_op, lift_weave};

pub const N_ANYONS: usize = 6;

/// Strand bookkeeping for the two encoded qubits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QubitLayout {
    pub control: [usize; 3],
    pub target: [usize; 3],
    pub control_pair: [usize; 2],
}

impl Default for QubitLayout {
    fn default() -> Self {
        QubitLayout { control: [1, 2, 3], target: [4, 5, 6], control_pair: [1, 2] }
    }
}

impl QubitLayout {
    pub fn embedding(&self) -> Result<Embedding> {
        if *self != QubitLayout::default() {
            return Err(Error::InvalidLayout("only control 1-3, target 4-6, pair (1,2) is supported".into()));
        }
        computational_embedding(N_ANYONS, &[self.control, self.target])
    }
}

/// One lifted weave.
#[derive(Clone, Debug)]
pub struct Stage {
    pub label: String,
    pub weave: Weave,
    /// First strand of the four-strand group the weave acts on.
    pub offset: usize,
    /// Names of the three effective objects, left to right, at the start of the stage.
    pub objects: [String; 3],
    pub lifted: BraidWord,
    /// The three-object gate this stage stands in for, with its aligning phase applied.
    pub ideal: CMatrix,
    /// Distance of the weave from `ideal` on the compared part.
    pub epsilon: f64,
}

impl Stage {
    /// Strand the pair's left member occupies before and after the stage.
    pub fn pair_strands(&self) -> (usize, usize) {
        (self.offset + self.weave.start_pos - 1, self.offset + self.weave.end_pos - 1)
    }

    /// Six-anyon operator of the stage with the weave replaced by its ideal.
    pub fn ideal_operator(&self) -> Result<CMatrix> {
        let actual = evaluate(&self.lifted, N_ANYONS)?.entries;
        let u3 = evaluate(&self.weave.word, 3)?.entries;
        let fix = lift_op(&(u3.adjoint() * &self.ideal), self.offset, self.weave.start_pos, N_ANYONS)?;
        Ok(actual * fix)
    }
}

#[derive(Clone, Debug)]
pub struct CompositeBraid {
    pub stages: Vec<Stage>,
    pub flattened: BraidWord,
}

impl CompositeBraid {
    fn assemble(stages: Vec<Stage>) -> Result<Self> {
        for pair in stages.windows(2) {
            let (_, end) = pair[0].pair_strands();
            let (start, _) = pair[1].pair_strands();
            if end != start {
                return Err(Error::StageMismatch(format!(
                    "{} leaves the pair at strand {end} but {} expects it at strand {start}",
                    pair[0].label, pair[1].label
                )));
            }
        }
        let mut flattened = BraidWord::empty(N_ANYONS);
        for s in &stages {
            flattened = flattened.then(&s.lifted)?;
        }
        Ok(CompositeBraid { stages, flattened })
    }

    /// Composite with each weave replaced by its ideal gate.
    pub fn ideal_operator(&self) -> Result<CMatrix> {
        let mut u = crate::matrix::identity(evaluate(&BraidWord::empty(N_ANYONS), N_ANYONS)?.dim());
        for s in &self.stages {
            u = s.ideal_operator()? * u;
        }
        Ok(u)
    }

    pub fn stage_lengths(&self) -> Vec<u64> {
        self.stages.iter().map(|s| s.lifted.length()).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockPhases {
    pub block: u8,
    #[serde(flatten)]
    pub alignment: PhaseAlignment,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateReport {
    pub target: String,
    /// Phase-aligned distance from the ideal gate with total q-spin 0.
    pub eps_block0: f64,
    pub eps_block1: f64,
    /// Distance without single-qubit phase corrections.
    pub raw_eps_block0: f64,
    pub raw_eps_block1: f64,
    pub leakage: f64,
    pub stage_lengths: Vec<u64>,
    pub stage_epsilons: Vec<f64>,
    pub total_length: u64,
    pub flattened: String,
    pub phases: Vec<BlockPhases>,
}

impl GateReport {
    pub fn max_eps(&self) -> f64 {
        self.eps_block0.max(self.eps_block1)
    }
}

/// Exact controlled-NOT on `|control target>`.
pub fn cnot_matrix() -> CMatrix {
    let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
    from_rows(&[&[l, o, o, o], &[o, l, o, o], &[o, o, o, l], &[o, o, l, o]])
}

/// Controlled double braiding of the target's upper two anyons, `m` full turns.
pub fn controlled_phase_matrix(m: i64) -> CMatrix {
    let k = crate::algebra::ModelConstants::standard();
    let r0 = k.r(QSpin::Zero).powi(2 * m as i32);
    let r1 = k.r(QSpin::One).powi(2 * m as i32);
    diag(&[c(1.0, 0.0), c(1.0, 0.0), r0, r1])
}

/// Largest computational-to-noncomputational amplitude, per total-charge block.
pub fn leakage(u: &CMatrix, embedding: &Embedding) -> f64 {
    let v = embedding.to_embedding_basis(u);
    let mut worst = 0.0f64;
    for block in &embedding.blocks {
        let comp = embedding.computational_in(block.charge).unwrap_or(&[]);
        let nc: Vec<usize> = block.range().filter(|i| !comp.contains(i)).collect();
        if comp.is_empty() || nc.is_empty() {
            continue;
        }
        worst = worst.max(op_norm(&restrict(&v, &nc, comp)));
    }
    worst
}

/// Per-block 4x4 actions on the computational subspace, in block order.
pub fn computational_blocks(u: &CMatrix, embedding: &Embedding) -> Vec<(QSpin, CMatrix)> {
    let v = embedding.to_embedding_basis(u);
    embedding.computational.iter().map(|(q, idx)| (*q, restrict(&v, idx, idx))).collect()
}

/// Compare a six-anyon unitary with a two-qubit gate.
pub fn report(
    target: &str,
    u: &CMatrix,
    ideal: &CMatrix,
    composite: &CompositeBraid,
    embedding: &Embedding,
) -> Result<GateReport> {
    let mut eps = [0.0; 2];
    let mut raw = [0.0; 2];
    let mut phases = Vec::new();
    for (q, a) in computational_blocks(u, embedding) {
        let (e, fit) = align_phases(&a, ideal);
        eps[q.bit()] = e;
        raw[q.bit()] = op_norm(&(a - ideal));
        phases.push(BlockPhases { block: q.bit() as u8, alignment: fit });
    }
    phases.sort_by_key(|p| p.block);
    Ok(GateReport {
        target: target.to_string(),
        eps_block0: eps[0],
        eps_block1: eps[1],
        raw_eps_block0: raw[0],
        raw_eps_block1: raw[1],
        leakage: leakage(u, embedding),
        stage_lengths: composite.stage_lengths(),
        stage_epsilons: composite.stages.iter().map(|s| s.epsilon).collect(),
        total_length: composite.flattened.length(),
        flattened: format(&composite.flattened),
        phases,
    })
}

fn weave_of(pairs: &[(usize, i64)], start: usize) -> Result<Weave> {
    crate::braid::classify_weave(&BraidWord::from_pairs(3, pairs)?, start)
}

fn check_weave(w: &Weave, label: &str, start: usize, end: usize) -> Result<()> {
    if w.word.n_strands != 3 {
        return Err(Error::DimensionMismatch { left: w.word.n_strands, right: 3 });
    }
    if w.start_pos != start || w.end_pos != end {
        return Err(Error::StageMismatch(format!(
            "{label} weave must move the pair from slot {start} to slot {end}, got {} -> {}",
            w.start_pos, w.end_pos
        )));
    }
    Ok(())
}

/// Build a stage whose ideal is `target` (aligned to the weave with the target's own rule).
fn stage(label: &str, weave: Weave, offset: usize, objects: [&str; 3], target: &GateTarget) -> Result<Stage> {
    let u3 = evaluate(&weave.word, 3)?.entries;
    let (epsilon, phi) = target.epsilon(&u3)?;
    let ideal = match target.mode {
        TargetMode::Full => target.matrix.map(|z| z * cis(phi)),
        TargetMode::QubitBlockOnly => {
            // the noncomputational entry is not constrained; keep the weave's own
            let m = &target.matrix;
            let nc = u3[(NC_INDEX, NC_INDEX)] / u3[(NC_INDEX, NC_INDEX)].norm();
            let z = c(0.0, 0.0);
            let p = cis(phi);
            from_rows(&[&[p * m[(0, 0)], p * m[(0, 1)], z], &[p * m[(1, 0)], p * m[(1, 1)], z], &[z, z, nc]])
        }
    };
    let lifted = lift_weave(&weave, offset, N_ANYONS)?;
    Ok(Stage { label: label.into(), weave, offset, objects: objects.map(String::from), lifted, ideal, epsilon })
}

fn inverse_stage(label: &str, of: &Stage, objects: [&str; 3]) -> Result<Stage> {
    let weave = of.weave.inverse();
    let lifted = lift_weave(&weave, of.offset, N_ANYONS)?;
    Ok(Stage {
        label: label.into(),
        weave,
        offset: of.offset,
        objects: objects.map(String::from),
        lifted,
        ideal: of.ideal.adjoint(),
        epsilon: of.epsilon,
    })
}

/// Bring the pair next to the target: anyon 3 passes over the pair.
fn transport_in() -> Result<Stage> {
    let w = weave_of(&[(1, 1)], 1)?;
    let u = evaluate(&w.word, 3)?.entries;
    stage("transport-in", w, 1, ["P", "3", "4"], &GateTarget::full(u, false)?)
}

/// Controlled rotation of the target by `m` double braidings of its upper two anyons.
///
/// `effective` must be a return weave approximating `sigma_2^{2m}` with the pair in slot 1.
/// Values of `m` divisible by 5 compile but give the identity.
pub fn compile_controlled_phase(m: i64, effective: &Weave) -> Result<(CompositeBraid, GateReport)> {
    if m < 1 {
        return Err(Error::InvalidTarget(format!("m must be positive, got {m}")));
    }
    check_weave(effective, "effective braiding", 1, 1)?;
    let sigma = crate::braid::sigma_power3(2, 2 * m)?;
    let tin = transport_in()?;
    let body = stage("effective", effective.clone(), 2, ["P", "4", "5"], &GateTarget::full(sigma, true)?)?;
    let tout = inverse_stage("transport-out", &tin, ["3", "P", "4"])?;
    let composite = CompositeBraid::assemble(vec![tin, body, tout])?;
    let embedding = QubitLayout::default().embedding()?;
    let u = evaluate(&composite.flattened, N_ANYONS)?.entries;
    let rep = report(&format!("controlled-phase(m={m})"), &u, &controlled_phase_matrix(m), &composite, &embedding)?;
    Ok((composite, rep))
}

/// Controlled-NOT: inject the pair into the target, apply NOT there, eject it.
///
/// `injection` moves the pair from slot 1 to slot 3 of (P, 4, 5); `not` acts on
/// (5, P, 6) with the pair in slot 2, where 5 and the pair now form the target's first two
/// objects. Two transport stages bring the pair next to the target and back.
///
/// The injection is idealized as the full 3x3 identity: the group (P, 4, 5) can have total
/// q-spin 0, so a mismatched noncomputational phase would leak once the NOT acts.
pub fn compile_cnot(injection: &Weave, not: &Weave) -> Result<(CompositeBraid, GateReport)> {
    check_weave(injection, "injection", 1, 3)?;
    check_weave(not, "NOT", 2, 2)?;
    let id = GateTarget::full(crate::matrix::identity(3), true)?;
    let x = GateTarget::block(crate::braid::pauli_x(), true)?;
    let tin = transport_in()?;
    let inject = stage("inject", injection.clone(), 2, ["P", "4", "5"], &id)?;
    let flip = stage("not", not.clone(), 3, ["5", "P", "6"], &x)?;
    let eject = inverse_stage("eject", &inject, ["4", "5", "P"])?;
    let tout = inverse_stage("transport-out", &tin, ["3", "P", "4"])?;
    let composite = CompositeBraid::assemble(vec![tin, inject, flip, eject, tout])?;
    let embedding = QubitLayout::default().embedding()?;
    let u = evaluate(&composite.flattened, N_ANYONS)?.entries;
    let rep = report("cnot", &u, &cnot_matrix(), &composite, &embedding)?;
    Ok((composite, rep))
}
