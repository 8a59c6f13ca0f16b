//! Base nets: every short return-to-start weave with its phase-free qubit rotation.

use std::collections::HashMap;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::CONVENTION_TAG;
use crate::braid::{format, parse, BraidWord, Crossing};
use crate::error::{Error, Result};
use crate::search::kdtree::KdTree;
use crate::search::rep3::GeneratorTable;
use crate::search::space::{dfs, Node, Space};
use crate::su2::{projective_distance, Quat};

const NET_VERSION: u32 = 1;
/// Largest number of words enumerated while building a net.
const MAX_WORDS: f64 = 5e7;

#[derive(Clone, Debug, PartialEq)]
pub struct NetEntry {
    pub word: BraidWord,
    /// Qubit-block rotation, sign fixed so the first nonzero component is positive.
    pub rotation: Quat,
}

#[derive(Clone, Debug)]
pub struct BaseNet {
    /// Start and end position of the mobile strand in every entry.
    pub slot: usize,
    pub max_base_length: usize,
    pub entries: Vec<NetEntry>,
    /// Largest nearest-entry distance over a random sample of rotations, once measured.
    pub covering_radius: Option<f64>,
    tree: KdTree,
}

pub(crate) fn canonical_sign(q: Quat) -> Quat {
    let lead = [q.w, q.i, q.j, q.k].into_iter().find(|v| v.abs() > 1e-12).unwrap_or(1.0);
    if lead < 0.0 {
        -q
    } else {
        q
    }
}

fn key(q: &Quat) -> [i64; 4] {
    let s = 1e9;
    [(q.w * s).round() as i64, (q.i * s).round() as i64, (q.j * s).round() as i64, (q.k * s).round() as i64]
}

fn arr(q: &Quat) -> [f64; 4] {
    [q.w, q.i, q.j, q.k]
}

fn to_word(path: &[(u8, i8)]) -> BraidWord {
    BraidWord {
        n_strands: 3,
        crossings: path.iter().map(|&(g, e)| Crossing::new(g as usize, e as i64)).collect(),
    }
}

fn word_length(path: &[(u8, i8)]) -> u32 {
    path.iter().map(|&(_, e)| e.unsigned_abs() as u32).sum()
}

impl BaseNet {
    /// Enumerate all canonical return weaves from `slot` up to `base_length` interchanges,
    /// keeping the shortest word for each distinct rotation.
    pub fn build(base_length: usize, slot: usize) -> Result<Self> {
        if !(1..=3).contains(&slot) {
            return Err(Error::InfeasibleEndpoints(format!("mobile slot {slot} is not in 1..=3")));
        }
        let space = Space::weave(slot as u8, Some(slot as u8));
        let count = space.count_words(space.start_state(), base_length as u32, false);
        if count > MAX_WORDS {
            return Err(Error::BudgetExceeded(format!(
                "a net of length {base_length} enumerates {count:.3e} words (limit {MAX_WORDS:.0e})"
            )));
        }
        let table = GeneratorTable::new()?;
        let root = Node { path: Vec::new(), state: space.start_state(), elem: table.word(&[]), len: 0 };
        let mut best: HashMap<[i64; 4], (Vec<(u8, i8)>, Quat)> = HashMap::new();
        dfs(&space, &table, &root, base_length as u32, &mut |path, st, elem, len| {
            if !space.accepts(st) {
                return;
            }
            let q = canonical_sign(elem.q);
            let slot = best.entry(key(&q)).or_insert_with(|| (path.to_vec(), q));
            let old = word_length(&slot.0);
            if len < old || (len == old && path < slot.0.as_slice()) {
                *slot = (path.to_vec(), q);
            }
        });
        let mut entries: Vec<(Vec<(u8, i8)>, Quat)> = best.into_values().collect();
        entries.sort_by(|a, b| word_length(&a.0).cmp(&word_length(&b.0)).then_with(|| a.0.cmp(&b.0)));
        let entries = entries.into_iter().map(|(p, q)| NetEntry { word: to_word(&p), rotation: q }).collect();
        Ok(Self::from_entries(slot, base_length, entries, None))
    }

    fn from_entries(slot: usize, max_base_length: usize, entries: Vec<NetEntry>, covering_radius: Option<f64>) -> Self {
        let mut pts = Vec::with_capacity(2 * entries.len());
        for (i, e) in entries.iter().enumerate() {
            pts.push((arr(&e.rotation), i as u32));
            pts.push((arr(&-e.rotation), i as u32));
        }
        BaseNet { slot, max_base_length, entries, covering_radius, tree: KdTree::build(pts) }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nearest entry and its phase-free distance.
    pub fn nearest(&self, q: &Quat) -> (usize, f64) {
        let mut best = (0usize, f64::INFINITY);
        self.tree.query(&arr(q), 4.0, &mut |i, d| {
            let i = i as usize;
            if d < best.1 || (d == best.1 && i < best.0) {
                best = (i, d);
            }
            best.1
        });
        best
    }

    /// Best product "`a` then `b`" of two entries, and its distance.
    pub fn nearest_pair(&self, q: &Quat) -> (usize, usize, f64) {
        let identity = self.entries.iter().position(|e| e.word.is_empty()).unwrap_or(0);
        let (b0, d0) = self.nearest(q);
        let mut best = (identity, b0, d0);
        for (a, ea) in self.entries.iter().enumerate() {
            let x = q * ea.rotation.conjugate();
            let la = ea.word.length();
            self.tree.query(&arr(&x), best.2 + 1e-15, &mut |b, d| {
                let b = b as usize;
                let better = d < best.2 - 1e-15
                    || (d <= best.2 + 1e-15
                        && la + self.entries[b].word.length()
                            < self.entries[best.0].word.length() + self.entries[best.1].word.length());
                if better {
                    best = (a, b, d);
                }
                best.2 + 1e-15
            });
        }
        best
    }

    /// Largest nearest-entry distance over `samples` uniformly random rotations.
    pub fn measure_covering_radius(&mut self, samples: usize, seed: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut worst = 0.0f64;
        for _ in 0..samples {
            let q = random_rotation(&mut rng);
            worst = worst.max(self.nearest(&q).1);
        }
        self.covering_radius = Some(worst);
        worst
    }

    pub fn to_file(&self) -> NetFile {
        NetFile {
            version: NET_VERSION,
            convention: CONVENTION_TAG.to_string(),
            slot: self.slot,
            max_base_length: self.max_base_length,
            covering_radius: self.covering_radius,
            entries: self.entries.iter().map(|e| (format(&e.word), arr(&e.rotation))).collect(),
        }
    }

    /// Rebuild from a file, checking every stored rotation against its word.
    pub fn from_file(file: NetFile) -> Result<Self> {
        if file.version != NET_VERSION {
            return Err(Error::NetFile(format!("unsupported net version {}", file.version)));
        }
        if file.convention != CONVENTION_TAG {
            return Err(Error::NetFile(format!("net built for convention {:?}", file.convention)));
        }
        let table = GeneratorTable::new()?;
        let mut entries = Vec::with_capacity(file.entries.len());
        for (k, (text, r)) in file.entries.into_iter().enumerate() {
            let word = parse(&text, 3).map_err(|e| Error::NetFile(format!("entry {k}: {e}")))?;
            let w = crate::braid::classify_weave(&word, file.slot).map_err(|e| Error::NetFile(format!("entry {k}: {e}")))?;
            if !w.returns_to_start() {
                return Err(Error::NetFile(format!("entry {k} is not a return weave")));
            }
            let path: Vec<(u8, i8)> = word.crossings.iter().map(|c| (c.index as u8, c.exponent as i8)).collect();
            let q = table.word(&path).q;
            let stored = Quat::new(r[0], r[1], r[2], r[3]);
            if projective_distance(&q, &stored) > 1e-10 {
                return Err(Error::NetFile(format!("entry {k}: stored rotation does not match {text}")));
            }
            entries.push(NetEntry { word, rotation: canonical_sign(q) });
        }
        Ok(Self::from_entries(file.slot, file.max_base_length, entries, file.covering_radius))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let f = std::io::BufWriter::new(std::fs::File::create(path)?);
        serde_json::to_writer(f, &self.to_file())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let f = std::io::BufReader::new(std::fs::File::open(path)?);
        Self::from_file(serde_json::from_reader(f)?)
    }
}

/// On-disk form of a net.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NetFile {
    pub version: u32,
    pub convention: String,
    pub slot: usize,
    pub max_base_length: usize,
    pub covering_radius: Option<f64>,
    /// Canonical word text and rotation `[w, x, y, z]`.
    pub entries: Vec<(String, [f64; 4])>,
}

/// Haar-random unit quaternion.
pub fn random_rotation<R: Rng>(rng: &mut R) -> Quat {
    loop {
        let v = Quat::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let n = v.norm();
        if n > 1e-3 && n <= 1.0 {
            return v / n;
        }
    }
}
