//! Fibonacci anyon model: fusion rules, fusion-tree bases and the braid generator matrices.
//!
//! Conventions used throughout the crate:
//!
//! * A basis state of `n` anyons is a left-to-right fusion chain. `labels[k]` is the total
//!   q-spin of anyons `1..=k+2`, so the last label is the total charge.
//! * Bases list the total-charge-1 block first, then the total-charge-0 block, each block in
//!   lexicographic label order. For three anyons this gives `|0_L>, |1_L>, |NC>`, with the
//!   computational qubit block in the upper-left corner.
//! * `sigma_i` is the clockwise exchange of anyons `i` and `i + 1`.
//! * The exchange phases live in [`R_ZERO_ANGLE`] and [`R_ONE_ANGLE`]. Negating both gives the
//!   complex-conjugate convention; every distance and block property is unchanged by that swap.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use std::f64::consts::PI;
use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{cis, identity, unitary_power, CMatrix, C64};

/// Phase picked up when the exchanged pair fuses to q-spin 0.
pub const R_ZERO_ANGLE: f64 = -4.0 * PI / 5.0;
/// Phase picked up when the exchanged pair fuses to q-spin 1.
pub const R_ONE_ANGLE: f64 = 3.0 * PI / 5.0;

/// Written into serialized nets so that files built under another convention are rejected.
pub const CONVENTION_TAG: &str = "fibonacci;r0=exp(-4pi*i/5);r1=exp(3pi*i/5);order=charge1-first";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QSpin {
    Zero,
    One,
}

impl QSpin {
    pub const ALL: [QSpin; 2] = [QSpin::Zero, QSpin::One];

    pub fn bit(self) -> usize {
        match self {
            QSpin::Zero => 0,
            QSpin::One => 1,
        }
    }

    pub fn from_bit(bit: usize) -> QSpin {
        if bit == 0 {
            QSpin::Zero
        } else {
            QSpin::One
        }
    }
}

impl fmt::Display for QSpin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

/// Allowed total q-spins when fusing `a` with `b`.
pub fn fusion_outcomes(a: QSpin, b: QSpin) -> &'static [QSpin] {
    match (a, b) {
        (QSpin::One, QSpin::One) => &[QSpin::Zero, QSpin::One],
        (QSpin::Zero, QSpin::Zero) => &[QSpin::Zero],
        _ => &[QSpin::One],
    }
}

pub fn fuses(a: QSpin, b: QSpin, c: QSpin) -> bool {
    fusion_outcomes(a, b).contains(&c)
}

#[derive(Clone, Copy, Debug)]
pub struct ModelConstants {
    pub tau: f64,
    pub f_matrix: [[f64; 2]; 2],
    pub r_zero: C64,
    pub r_one: C64,
}

impl ModelConstants {
    pub fn standard() -> Self {
        let tau = (5f64.sqrt() - 1.0) / 2.0;
        let st = tau.sqrt();
        ModelConstants {
            tau,
            f_matrix: [[tau, st], [st, -tau]],
            r_zero: cis(R_ZERO_ANGLE),
            r_one: cis(R_ONE_ANGLE),
        }
    }

    /// Exchange phase for a pair fusing to `charge`.
    pub fn r(&self, charge: QSpin) -> C64 {
        match charge {
            QSpin::Zero => self.r_zero,
            QSpin::One => self.r_one,
        }
    }
}

/// Recoupling coefficient `[F^{abc}_d]_{e,f}` relating `((a b)_e c)_d` to `(a (b c)_f)_d`.
///
/// For the Fibonacci model the only non-trivial block is `F^{111}_1`; every other admissible
/// labelling has a one-dimensional space and coefficient 1.
pub fn f_entry(a: QSpin, b: QSpin, c: QSpin, d: QSpin, e: QSpin, f: QSpin) -> f64 {
    if !(fuses(a, b, e) && fuses(e, c, d) && fuses(b, c, f) && fuses(a, f, d)) {
        return 0.0;
    }
    let one = QSpin::One;
    if a == one && b == one && c == one && d == one {
        ModelConstants::standard().f_matrix[e.bit()][f.bit()]
    } else {
        1.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FusionPath {
    pub labels: Vec<QSpin>,
}

impl FusionPath {
    pub fn anyons(&self) -> usize {
        self.labels.len() + 1
    }

    pub fn total(&self) -> QSpin {
        self.labels.last().copied().unwrap_or(QSpin::One)
    }

    /// Total charge of the first `k` anyons (`k = 0` is the vacuum).
    pub fn charge_of_first(&self, k: usize) -> QSpin {
        match k {
            0 => QSpin::Zero,
            1 => QSpin::One,
            _ => self.labels[k - 2],
        }
    }

    pub fn is_valid(&self) -> bool {
        (1..self.anyons()).all(|k| fuses(self.charge_of_first(k), QSpin::One, self.charge_of_first(k + 1)))
    }

    /// Nested notation, e.g. `((•,•)_1,•)_0`.
    pub fn notation(&self) -> String {
        let mut s = String::from("•");
        for (k, label) in self.labels.iter().enumerate() {
            s = if k == 0 { format!("(•,•)_{label}") } else { format!("({s},•)_{label}") };
        }
        s
    }
}

impl fmt::Display for FusionPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeBlock {
    pub charge: QSpin,
    pub start: usize,
    pub end: usize,
}

impl ChargeBlock {
    pub fn range(&self) -> Range<usize> {
        self.start..self.end
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

/// Contiguous charge blocks of an ordered list of total charges.
pub(crate) fn blocks_of(charges: impl IntoIterator<Item = QSpin>) -> Vec<ChargeBlock> {
    let mut blocks: Vec<ChargeBlock> = Vec::new();
    for (i, q) in charges.into_iter().enumerate() {
        match blocks.last_mut() {
            Some(b) if b.charge == q => b.end = i + 1,
            _ => blocks.push(ChargeBlock { charge: q, start: i, end: i + 1 }),
        }
    }
    blocks
}

/// Sort key putting total charge 1 first, lexicographic inside a block.
fn basis_order_key(total: QSpin, labels: &[QSpin]) -> (std::cmp::Reverse<QSpin>, Vec<QSpin>) {
    (std::cmp::Reverse(total), labels.to_vec())
}

#[derive(Clone, Debug)]
pub struct FusionBasis {
    pub n: usize,
    pub paths: Vec<FusionPath>,
    pub blocks: Vec<ChargeBlock>,
    index: HashMap<Vec<QSpin>, usize>,
}

impl FusionBasis {
    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn index_of(&self, labels: &[QSpin]) -> Option<usize> {
        self.index.get(labels).copied()
    }

    pub fn block(&self, charge: QSpin) -> Option<&ChargeBlock> {
        self.blocks.iter().find(|b| b.charge == charge)
    }

    pub fn block_size(&self, charge: QSpin) -> usize {
        self.block(charge).map_or(0, ChargeBlock::len)
    }
}

/// All fusion paths of `n` anyons in canonical order.
pub fn enumerate_basis(n: i64) -> Result<FusionBasis> {
    if n < 1 {
        return Err(Error::InvalidAnyonCount(n));
    }
    let n = n as usize;
    let mut paths: Vec<Vec<QSpin>> = vec![Vec::new()];
    for k in 1..n {
        let mut next = Vec::with_capacity(paths.len() * 2);
        for p in &paths {
            let prev = if k == 1 { QSpin::One } else { p[k - 2] };
            for &q in fusion_outcomes(prev, QSpin::One) {
                let mut labels = p.clone();
                labels.push(q);
                next.push(labels);
            }
        }
        paths = next;
    }
    let mut paths: Vec<FusionPath> = paths.into_iter().map(|labels| FusionPath { labels }).collect();
    paths.sort_by_key(|p| basis_order_key(p.total(), &p.labels));
    let blocks = blocks_of(paths.iter().map(FusionPath::total));
    let index = paths.iter().enumerate().map(|(i, p)| (p.labels.clone(), i)).collect();
    Ok(FusionBasis { n, paths, blocks, index })
}

/// A unitary together with the total-charge block structure of its basis.
#[derive(Clone, Debug)]
pub struct BlockUnitary {
    pub entries: CMatrix,
    pub blocks: Vec<ChargeBlock>,
}

impl BlockUnitary {
    pub fn identity(blocks: &[ChargeBlock]) -> Self {
        let dim = blocks.last().map_or(0, |b| b.end);
        BlockUnitary { entries: identity(dim), blocks: blocks.to_vec() }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn block_entries(&self, charge: QSpin) -> Option<CMatrix> {
        let b = self.blocks.iter().find(|b| b.charge == charge)?;
        Some(self.entries.view((b.start, b.start), (b.len(), b.len())).into_owned())
    }

    /// Largest modulus of an entry coupling two different charge blocks.
    pub fn max_off_block(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, bi) in self.blocks.iter().enumerate() {
            for (j, bj) in self.blocks.iter().enumerate() {
                if i == j {
                    continue;
                }
                for r in bi.range() {
                    for c in bj.range() {
                        worst = worst.max(self.entries[(r, c)].norm());
                    }
                }
            }
        }
        worst
    }

    pub fn unitarity_defect(&self) -> f64 {
        crate::matrix::unitarity_defect(&self.entries)
    }

    pub fn adjoint(&self) -> Self {
        BlockUnitary { entries: self.entries.adjoint(), blocks: self.blocks.clone() }
    }
}

fn generator_matrix(basis: &FusionBasis, i: usize) -> CMatrix {
    let model = ModelConstants::standard();
    let dim = basis.dim();
    let mut m = CMatrix::zeros(dim, dim);
    for (col, path) in basis.paths.iter().enumerate() {
        let left = path.charge_of_first(i - 1);
        let right = path.charge_of_first(i + 1);
        let mid = path.charge_of_first(i);
        for new_mid in QSpin::ALL {
            if i >= 2 && !(fuses(left, QSpin::One, new_mid) && fuses(new_mid, QSpin::One, right)) {
                continue;
            }
            if i == 1 && new_mid != mid {
                continue;
            }
            let mut amp = C64::new(0.0, 0.0);
            for e in QSpin::ALL {
                let fa = f_entry(left, QSpin::One, QSpin::One, right, new_mid, e);
                let fb = f_entry(left, QSpin::One, QSpin::One, right, mid, e);
                amp += model.r(e) * (fa * fb);
            }
            if amp.norm() == 0.0 {
                continue;
            }
            let mut labels = path.labels.clone();
            if i >= 2 {
                labels[i - 2] = new_mid;
            }
            let row = basis.index_of(&labels).expect("recoupled path is admissible");
            m[(row, col)] += amp;
        }
    }
    m
}

/// `sigma_i` on the `n`-anyon fusion space.
pub fn generator(n: i64, i: i64) -> Result<BlockUnitary> {
    let basis = enumerate_basis(n)?;
    if i < 1 || i as usize >= basis.n {
        return Err(Error::GeneratorOutOfRange { index: i, strands: basis.n });
    }
    Ok(BlockUnitary { entries: generator_matrix(&basis, i as usize), blocks: basis.blocks.clone() })
}

/// Cached generator powers for one anyon count.
///
/// Powers are stored for folded exponents in `-4..=5`, which covers every canonical crossing.
#[derive(Clone, Debug)]
pub struct Representation {
    pub basis: FusionBasis,
    powers: Vec<Vec<CMatrix>>,
}

impl Representation {
    pub fn new(n: usize) -> Result<Self> {
        let basis = enumerate_basis(n as i64)?;
        let powers = (1..basis.n)
            .map(|i| {
                let g = generator_matrix(&basis, i);
                (-4..=5).map(|e| unitary_power(&g, e)).collect()
            })
            .collect();
        Ok(Representation { basis, powers })
    }

    pub fn strands(&self) -> usize {
        self.basis.n
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// `sigma_i^e` for a folded exponent `e` in `-4..=5`.
    pub fn power(&self, i: usize, e: i32) -> &CMatrix {
        debug_assert!((-4..=5).contains(&e));
        &self.powers[i - 1][(e + 4) as usize]
    }

    pub fn generator(&self, i: usize) -> &CMatrix {
        self.power(i, 1)
    }

    pub fn identity(&self) -> BlockUnitary {
        BlockUnitary::identity(&self.basis.blocks)
    }
}

/// Shared representation for `n` anyons, built once per process.
pub fn representation(n: usize) -> Result<Arc<Representation>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Representation>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().expect("representation cache").get(&n) {
        return Ok(Arc::clone(r));
    }
    let built = Arc::new(Representation::new(n)?);
    let mut guard = cache.lock().expect("representation cache");
    Ok(Arc::clone(guard.entry(n).or_insert(built)))
}

/// Computational subspace of one or two encoded qubits.
///
/// For two qubits the computational states are not single chain-basis states, because the
/// charges inside the second triplet are not chain labels. They are indices in the
/// triplet-pair basis `(((12)_a 3)_b ((45)_c 6)_d)_f`, reached from the chain basis through
/// `change_of_basis`.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub n: usize,
    /// Rows: embedding basis, columns: chain basis.
    pub change_of_basis: CMatrix,
    pub blocks: Vec<ChargeBlock>,
    pub state_names: Vec<String>,
    /// Computational indices per total-charge block, ordered as the logical states
    /// `|0>, |1>` (one qubit) or `|00>, |01>, |10>, |11>` (control bit first).
    pub computational: Vec<(QSpin, Vec<usize>)>,
    pub noncomputational: Vec<usize>,
}

impl Embedding {
    pub fn to_embedding_basis(&self, u: &CMatrix) -> CMatrix {
        &self.change_of_basis * u * self.change_of_basis.adjoint()
    }

    pub fn computational_in(&self, charge: QSpin) -> Option<&[usize]> {
        self.computational.iter().find(|(q, _)| *q == charge).map(|(_, v)| v.as_slice())
    }

    pub fn computational_count(&self) -> usize {
        self.computational.iter().map(|(_, v)| v.len()).sum()
    }
}

/// Labels `(a, b, c, d, f)` of the triplet-pair basis for six anyons.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairTreeLabels {
    pub a: QSpin,
    pub b: QSpin,
    pub c: QSpin,
    pub d: QSpin,
    pub f: QSpin,
}

impl PairTreeLabels {
    pub fn is_computational(&self) -> bool {
        self.b == QSpin::One && self.d == QSpin::One
    }
}

pub fn pair_tree_basis() -> Vec<PairTreeLabels> {
    let mut out = Vec::new();
    for a in QSpin::ALL {
        for &b in fusion_outcomes(a, QSpin::One) {
            for c in QSpin::ALL {
                for &d in fusion_outcomes(c, QSpin::One) {
                    for &f in fusion_outcomes(b, d) {
                        out.push(PairTreeLabels { a, b, c, d, f });
                    }
                }
            }
        }
    }
    out.sort_by_key(|t| basis_order_key(t.f, &[t.a, t.b, t.c, t.d]));
    out
}

fn pair_tree_change_of_basis(chain: &FusionBasis, tree: &[PairTreeLabels]) -> CMatrix {
    let one = QSpin::One;
    let mut w = CMatrix::zeros(tree.len(), chain.dim());
    for (t, lab) in tree.iter().enumerate() {
        for (col, path) in chain.paths.iter().enumerate() {
            let l = &path.labels;
            let (a, b, c3, c4, f) = (l[0], l[1], l[2], l[3], l[4]);
            if a != lab.a || b != lab.b || f != lab.f {
                continue;
            }
            let v = f_entry(b, one, one, c4, c3, lab.c) * f_entry(b, lab.c, one, f, c4, lab.d);
            w[(t, col)] = C64::new(v, 0.0);
        }
    }
    w
}

/// Locate the encoded qubits of a layout given as 1-based anyon triplets.
///
/// Supported layouts are a single qubit on anyons 1-3 (`n = 3`) and two qubits on anyons
/// 1-3 and 4-6 (`n = 6`).
pub fn computational_embedding(n: usize, triplets: &[[usize; 3]]) -> Result<Embedding> {
    let single = [[1, 2, 3]];
    let pair = [[1, 2, 3], [4, 5, 6]];
    if n == 3 && triplets == single {
        let basis = enumerate_basis(3)?;
        let zero = basis.index_of(&[QSpin::Zero, QSpin::One]).expect("|0_L>");
        let one = basis.index_of(&[QSpin::One, QSpin::One]).expect("|1_L>");
        let nc = basis.index_of(&[QSpin::One, QSpin::Zero]).expect("|NC>");
        return Ok(Embedding {
            n,
            change_of_basis: identity(3),
            blocks: basis.blocks.clone(),
            state_names: basis.paths.iter().map(FusionPath::notation).collect(),
            computational: vec![(QSpin::One, vec![zero, one])],
            noncomputational: vec![nc],
        });
    }
    if n == 6 && triplets == pair {
        let chain = enumerate_basis(6)?;
        let tree = pair_tree_basis();
        let change_of_basis = pair_tree_change_of_basis(&chain, &tree);
        let blocks = blocks_of(tree.iter().map(|t| t.f));
        let mut computational = Vec::new();
        for b in &blocks {
            let idx: Vec<usize> = b.range().filter(|&i| tree[i].is_computational()).collect();
            computational.push((b.charge, idx));
        }
        let noncomputational = (0..tree.len()).filter(|&i| !tree[i].is_computational()).collect();
        let state_names = tree
            .iter()
            .map(|t| format!("(((••)_{}•)_{} ((••)_{}•)_{})_{}", t.a, t.b, t.c, t.d, t.f))
            .collect();
        return Ok(Embedding { n, change_of_basis, blocks, state_names, computational, noncomputational });
    }
    Err(Error::InvalidLayout(format!(
        "expected anyons 1-3 for one qubit (n = 3) or triplets 1-3 and 4-6 (n = 6), got n = {n} with {triplets:?}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{op_norm, restrict};

    const TOL: f64 = 1e-12;

    fn fib_dp(n: usize) -> usize {
        // number of admissible label sequences, counted by charge
        let mut ways = [0usize, 1usize]; // after one anyon: charge 1
        for _ in 1..n {
            ways = [ways[1], ways[0] + ways[1]];
        }
        ways[0] + ways[1]
    }

    #[test]
    fn fusion_rules() {
        assert_eq!(fusion_outcomes(QSpin::One, QSpin::One), &[QSpin::Zero, QSpin::One]);
        assert_eq!(fusion_outcomes(QSpin::Zero, QSpin::One), &[QSpin::One]);
        assert_eq!(fusion_outcomes(QSpin::One, QSpin::Zero), &[QSpin::One]);
        assert_eq!(fusion_outcomes(QSpin::Zero, QSpin::Zero), &[QSpin::Zero]);
    }

    #[test]
    fn constants_satisfy_their_identities() {
        let m = ModelConstants::standard();
        assert!((m.tau * m.tau + m.tau - 1.0).abs() < 1e-15);
        let f = m.f_matrix;
        for i in 0..2 {
            for j in 0..2 {
                let v: f64 = (0..2).map(|k| f[i][k] * f[k][j]).sum();
                assert!((v - if i == j { 1.0 } else { 0.0 }).abs() < 1e-15);
            }
        }
        assert!((m.r_zero.powi(10) - C64::new(1.0, 0.0)).norm() < TOL);
        assert!((m.r_one.powi(10) - C64::new(1.0, 0.0)).norm() < TOL);
    }

    #[test]
    fn small_bases() {
        assert!(matches!(enumerate_basis(0), Err(Error::InvalidAnyonCount(0))));
        assert!(enumerate_basis(-3).is_err());
        assert_eq!(enumerate_basis(1).unwrap().dim(), 1);
        let b2 = enumerate_basis(2).unwrap();
        let names: Vec<String> = b2.paths.iter().map(|p| p.notation()).collect();
        assert_eq!(names.len(), 2);
        assert!(names.contains(&"(•,•)_0".to_string()) && names.contains(&"(•,•)_1".to_string()));
        let b3 = enumerate_basis(3).unwrap();
        let names: Vec<String> = b3.paths.iter().map(|p| p.notation()).collect();
        assert_eq!(names, ["((•,•)_0,•)_1", "((•,•)_1,•)_1", "((•,•)_1,•)_0"]);
        let b6 = enumerate_basis(6).unwrap();
        assert_eq!(b6.dim(), 13);
        assert_eq!(b6.block_size(QSpin::Zero), 5);
        assert_eq!(b6.block_size(QSpin::One), 8);
    }

    #[test]
    fn dimension_law_up_to_sixteen() {
        for n in 1..=16 {
            let b = enumerate_basis(n as i64).unwrap();
            assert_eq!(b.dim(), fib_dp(n), "n = {n}");
            assert!(b.paths.iter().all(FusionPath::is_valid));
        }
    }

    #[test]
    fn sigma1_is_diagonal_r_phases() {
        let m = ModelConstants::standard();
        let s1 = generator(3, 1).unwrap().entries;
        let want = crate::matrix::diag(&[m.r_zero, m.r_one, m.r_one]);
        assert!(op_norm(&(s1 - want)) < TOL);
    }

    #[test]
    fn sigma2_is_f_r_f_on_the_qubit_block() {
        let m = ModelConstants::standard();
        let s2 = generator(3, 2).unwrap().entries;
        // explicit 2x2 product F diag(r0, r1) F
        let f = m.f_matrix;
        let r = [m.r_zero, m.r_one];
        for i in 0..2 {
            for j in 0..2 {
                let v: C64 = (0..2).map(|k| r[k] * (f[i][k] * f[k][j])).sum();
                assert!((s2[(i, j)] - v).norm() < TOL);
            }
        }
        assert!((s2[(2, 2)] - m.r_one).norm() < TOL);
        assert!((s2[(0, 0)].norm() - m.tau).abs() < TOL);
    }

    #[test]
    fn generator_index_is_checked() {
        assert!(matches!(generator(3, 3), Err(Error::GeneratorOutOfRange { .. })));
        assert!(matches!(generator(3, 0), Err(Error::GeneratorOutOfRange { .. })));
    }

    #[test]
    fn braid_group_relations() {
        for n in 3..=8 {
            let rep = Representation::new(n).unwrap();
            let id = identity(rep.dim());
            for i in 1..n {
                let g = rep.generator(i);
                assert!(op_norm(&(g.adjoint() * g - &id)) < TOL);
                assert!(op_norm(&(unitary_power(g, 10) - &id)) < TOL);
                let bu = BlockUnitary { entries: g.clone(), blocks: rep.basis.blocks.clone() };
                assert!(bu.max_off_block() < TOL);
                for j in (i + 1)..n {
                    let h = rep.generator(j);
                    if j == i + 1 {
                        let lhs = g * h * g;
                        let rhs = h * g * h;
                        assert!(op_norm(&(lhs - rhs)) < TOL, "YB n={n} i={i}");
                    } else {
                        assert!(op_norm(&(g * h - h * g)) < TOL, "far n={n} {i},{j}");
                    }
                }
            }
        }
    }

    #[test]
    fn single_qubit_embedding() {
        let e = computational_embedding(3, &[[1, 2, 3]]).unwrap();
        assert_eq!(e.computational, vec![(QSpin::One, vec![0, 1])]);
        assert_eq!(e.noncomputational, vec![2]);
    }

    #[test]
    fn two_qubit_embedding_counts_and_orthogonality() {
        let e = computational_embedding(6, &[[1, 2, 3], [4, 5, 6]]).unwrap();
        assert_eq!(e.computational_in(QSpin::Zero).unwrap().len(), 4);
        assert_eq!(e.computational_in(QSpin::One).unwrap().len(), 4);
        assert_eq!(e.noncomputational.len(), 13 - 8);
        let w = &e.change_of_basis;
        assert!(op_norm(&(w * w.adjoint() - identity(13))) < TOL);
        // change of basis respects total charge
        let chain = enumerate_basis(6).unwrap();
        for b in &e.blocks {
            for r in b.range() {
                for (c, p) in chain.paths.iter().enumerate() {
                    if p.total() != b.charge {
                        assert!(w[(r, c)].norm() < TOL);
                    }
                }
            }
        }
    }

    #[test]
    fn exchanges_inside_a_triplet_pair_are_diagonal_in_the_tree_basis() {
        let rep = Representation::new(6).unwrap();
        let e = computational_embedding(6, &[[1, 2, 3], [4, 5, 6]]).unwrap();
        let tree = pair_tree_basis();
        let m = ModelConstants::standard();
        for (gen, pick) in [(1usize, 0usize), (4, 2)] {
            let t = e.to_embedding_basis(rep.generator(gen));
            for i in 0..13 {
                for j in 0..13 {
                    let want = if i == j {
                        let q = if pick == 0 { tree[i].a } else { tree[i].c };
                        m.r(q)
                    } else {
                        C64::new(0.0, 0.0)
                    };
                    assert!((t[(i, j)] - want).norm() < TOL, "sigma{gen} ({i},{j})");
                }
            }
        }
        // sigma_2 acts within the control triplet exactly like the three-anyon sigma_2
        let s2 = e.to_embedding_basis(rep.generator(2));
        let s2_3 = generator(3, 2).unwrap().entries;
        let idx3 = |a: QSpin, b: QSpin| enumerate_basis(3).unwrap().index_of(&[a, b]).unwrap();
        for (i, ti) in tree.iter().enumerate() {
            for (j, tj) in tree.iter().enumerate() {
                if (ti.c, ti.d, ti.f) != (tj.c, tj.d, tj.f) || ti.b != tj.b {
                    assert!(s2[(i, j)].norm() < TOL);
                    continue;
                }
                let want = s2_3[(idx3(ti.a, ti.b), idx3(tj.a, tj.b))];
                assert!((s2[(i, j)] - want).norm() < TOL);
            }
        }
        let _ = restrict(&s2, &[0], &[0]);
    }

    #[test]
    fn rejects_other_layouts() {
        assert!(computational_embedding(6, &[[1, 2, 4], [3, 5, 6]]).is_err());
        assert!(computational_embedding(5, &[[1, 2, 3]]).is_err());
        assert!(computational_embedding(6, &[[1, 2, 3]]).is_err());
    }
}
