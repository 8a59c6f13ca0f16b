//! Three-strand braid and weave search.
//!
//! Both engines enumerate the same space of canonical words (alternating generators,
//! exponents folded to `(-5, 5]`), optionally restricted to weaves with fixed mobile
//! endpoints, and pick the best word under one total order: distance rounded to 1e-12, then
//! interchange count, then canonical text.

pub mod exhaustive;
pub mod kdtree;
pub(crate) mod metric_fast;
pub mod mitm;
pub mod rep3;
pub mod space;

use rayon::prelude::*;
use serde::Serialize;

use crate::braid::{classify_weave, format, BraidWord, GateTarget, Weave};
use crate::error::{Error, Result};
use rep3::{FastTarget, GeneratorTable};
use space::Space;

pub use exhaustive::exhaustive_search;
pub use mitm::mitm_search;

/// Words within this much of the running best are kept for the final tie-break.
pub(crate) const SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WeaveEnds {
    /// Mobile start position (1-based).
    pub start: usize,
    /// Required end position, or any.
    pub end: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub max_length: usize,
    pub weave: Option<WeaveEnds>,
    /// Worker threads; `None` uses the global pool. Results do not depend on it.
    pub threads: Option<usize>,
    /// Exhaustive enumeration refuses trees with more nodes than this.
    pub node_budget: f64,
    /// Meet-in-the-middle refuses tables whose estimated size exceeds this many bytes.
    pub memory_budget: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_length: 10, weave: None, threads: None, node_budget: 2e9, memory_budget: 2.5e9 }
    }
}

impl SearchOptions {
    pub fn with_length(max_length: usize) -> Self {
        SearchOptions { max_length, ..Default::default() }
    }

    pub fn weave(mut self, start: usize, end: Option<usize>) -> Self {
        self.weave = Some(WeaveEnds { start, end });
        self
    }

    pub fn threads(mut self, threads: Option<usize>) -> Self {
        self.threads = threads;
        self
    }

    pub(crate) fn space(&self) -> Result<Space> {
        if self.max_length < 1 {
            return Err(Error::InvalidOptions("max_length must be at least 1".into()));
        }
        if self.max_length > 120 {
            return Err(Error::InvalidOptions("max_length above 120 is not supported".into()));
        }
        match self.weave {
            None => Ok(Space::general()),
            Some(WeaveEnds { start, end }) => {
                let bad = |p: usize| !(1..=3).contains(&p);
                if bad(start) || end.is_some_and(bad) {
                    return Err(Error::InfeasibleEndpoints(format!(
                        "positions must lie in 1..=3 (start {start}, end {end:?})"
                    )));
                }
                Ok(Space::weave(start as u8, end.map(|e| e as u8)))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchResult {
    pub best_word: BraidWord,
    pub epsilon: f64,
    /// Phase `phi` minimizing `||U - e^{i phi} T||` (0 when the target is not phase-free).
    pub phase: f64,
    /// Phase of the noncomputational entry of the best word.
    pub nc_phase: f64,
    pub words_examined: u64,
    pub wall_notes: String,
    pub weave: Option<Weave>,
}

/// Running best of one shard.
#[derive(Default)]
pub(crate) struct Collector {
    pub best: f64,
    pub cands: Vec<(f64, Vec<(u8, i8)>)>,
    pub examined: u64,
}

impl Collector {
    pub fn new() -> Self {
        Collector { best: f64::INFINITY, cands: Vec::new(), examined: 0 }
    }

    #[inline]
    pub fn offer(&mut self, eps: f64, path: impl FnOnce() -> Vec<(u8, i8)>) {
        if eps > self.best + SLACK {
            return;
        }
        if eps < self.best {
            self.best = eps;
            let cut = eps + SLACK;
            self.cands.retain(|c| c.0 <= cut);
        }
        self.cands.push((eps, path()));
    }
}

pub(crate) fn run_sharded<T, R, F>(threads: Option<usize>, items: &[T], f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match threads {
        None => Ok(items.par_iter().map(&f).collect()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::InvalidOptions(format!("thread pool: {e}")))?;
            Ok(pool.install(|| items.par_iter().map(&f).collect()))
        }
    }
}

fn to_word(path: &[(u8, i8)]) -> BraidWord {
    let pairs: Vec<(usize, i64)> = path.iter().map(|&(g, e)| (g as usize, e as i64)).collect();
    BraidWord::from_pairs(3, &pairs).expect("three-strand generator")
}

/// Merge shard collectors and apply the total order.
pub(crate) fn finalize(
    collectors: Vec<Collector>,
    table: &GeneratorTable,
    fast: &FastTarget,
    opts: &SearchOptions,
    notes: String,
) -> Result<SearchResult> {
    let examined = collectors.iter().map(|c| c.examined).sum();
    let best = collectors.iter().map(|c| c.best).fold(f64::INFINITY, f64::min);
    if !best.is_finite() {
        return Err(Error::InfeasibleEndpoints(format!(
            "no word of length <= {} meets the weave endpoints {:?}",
            opts.max_length, opts.weave
        )));
    }
    let mut paths: Vec<Vec<(u8, i8)>> = collectors
        .into_iter()
        .flat_map(|c| c.cands.into_iter())
        .filter(|c| c.0 <= best + SLACK)
        .map(|c| c.1)
        .collect();
    paths.sort();
    paths.dedup();
    let mut ranked: Vec<(i64, u64, String, Vec<(u8, i8)>, f64, f64)> = paths
        .into_iter()
        .map(|p| {
            let e = table.word(&p);
            let (eps, phase) = fast.eps_phase(&e);
            let word = to_word(&p);
            ((eps * 1e12).round() as i64, word.length(), format(&word), p, eps, phase)
        })
        .collect();
    ranked.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));
    let (_, _, _, path, epsilon, phase) = ranked.into_iter().next().expect("at least one candidate");
    let best_word = to_word(&path);
    let weave = match opts.weave {
        Some(ends) => {
            let w = classify_weave(&best_word, ends.start)?;
            if ends.end.is_some_and(|e| e != w.end_pos) {
                return Err(Error::InfeasibleEndpoints("best word ends at the wrong position".into()));
            }
            Some(w)
        }
        None => None,
    };
    let nc_phase = table.word(&path).nc().arg();
    Ok(SearchResult { best_word, epsilon, phase, nc_phase, words_examined: examined, wall_notes: notes, weave })
}

/// Exhaustive search when the tree is small enough, meet-in-the-middle otherwise.
pub fn search(target: &GateTarget, opts: &SearchOptions) -> Result<SearchResult> {
    let space = opts.space()?;
    let nodes = space.count_words(space.start_state(), opts.max_length as u32, false);
    if nodes <= 2e6_f64.min(opts.node_budget) {
        exhaustive_search(target, opts)
    } else {
        mitm_search(target, opts)
    }
}

/// Return-to-start weave approximating `sigma_2^{2m}`: the mobile strand starts at position 1
/// and braids around the two static strands.
pub fn find_effective_braiding_weave(m: i64, opts: &SearchOptions) -> Result<SearchResult> {
    if m < 1 {
        return Err(Error::InvalidOptions(format!("m must be at least 1, got {m}")));
    }
    let target = GateTarget::full(crate::braid::target::sigma_power3(2, 2 * m)?, true)?;
    search(&target, &opts.clone().weave(1, Some(1)))
}

/// Weave approximating the identity that carries the mobile strand from position 1 to 3.
pub fn find_injection_weave(opts: &SearchOptions) -> Result<SearchResult> {
    let target = GateTarget::full(crate::matrix::identity(3), true)?;
    search(&target, &opts.clone().weave(1, Some(3)))
}

/// Return-to-start weave from the middle position approximating NOT on the qubit block.
pub fn find_not_weave(opts: &SearchOptions) -> Result<SearchResult> {
    let target = GateTarget::block(crate::braid::target::pauli_x(), true)?;
    search(&target, &opts.clone().weave(2, Some(2)))
}
