//! Meet-in-the-middle search.
//!
//! A word is split as prefix `a` (at most `h` interchanges) followed by suffix `b`. Suffixes
//! are tabulated per junction state in a k-d tree over both signs of their unit quaternion.
//! For each prefix the query point is `q_T q_a^*`; Euclidean distance to a stored `q_b` equals
//! the phase-free qubit-block distance of the whole word, a lower bound for every mode, so
//! a query radius equal to the running best loses no candidate.

use std::collections::HashMap;

use super::kdtree::KdTree;
use super::rep3::{Elem, FastTarget, GeneratorTable};
use super::space::{dfs, shards, Node, Space, State};
use super::{finalize, run_sharded, Collector, SearchOptions, SearchResult, SLACK};
use crate::braid::GateTarget;
use crate::error::{Error, Result};

const SHARD_DEPTH: usize = 2;
/// Rough bytes per tabulated suffix and per trie node.
const ENTRY_BYTES: f64 = 2.0 * 48.0 + 48.0;
const TRIE_BYTES: f64 = 8.0;

struct SuffixTable {
    tree: KdTree,
    elems: Vec<Elem>,
    lens: Vec<u8>,
    nodes: Vec<u32>,
    trie: Vec<(u32, u8, i8)>,
}

impl SuffixTable {
    fn build(space: &Space, table: &GeneratorTable, state: State, max_len: u32) -> SuffixTable {
        let mut trie: Vec<(u32, u8, i8)> = Vec::new();
        let mut ids: Vec<u32> = Vec::new();
        let mut elems = Vec::new();
        let mut lens = Vec::new();
        let mut nodes = Vec::new();
        let root = Node { path: Vec::new(), state, elem: Elem::identity(), len: 0 };
        dfs(space, table, &root, max_len, &mut |path, st, elem, len| {
            let depth = path.len();
            let parent = if depth == 0 { u32::MAX } else { ids[depth - 1] };
            let (g, e) = path.last().copied().unwrap_or((0, 0));
            let id = trie.len() as u32;
            trie.push((parent, g, e));
            ids.truncate(depth);
            ids.push(id);
            if space.accepts(st) {
                elems.push(*elem);
                lens.push(len as u8);
                nodes.push(id);
            }
        });
        let mut points = Vec::with_capacity(2 * elems.len());
        for (k, e) in elems.iter().enumerate() {
            let v = [e.q.w, e.q.i, e.q.j, e.q.k];
            points.push((v, k as u32));
            points.push(([-v[0], -v[1], -v[2], -v[3]], k as u32));
        }
        SuffixTable { tree: KdTree::build(points), elems, lens, nodes, trie }
    }

    fn path(&self, entry: u32) -> Vec<(u8, i8)> {
        let mut out = Vec::new();
        let mut id = self.nodes[entry as usize];
        while id != u32::MAX {
            let (parent, g, e) = self.trie[id as usize];
            if parent != u32::MAX {
                out.push((g, e));
            }
            id = parent;
        }
        out.reverse();
        out
    }
}

/// Prefix and suffix budgets for a total budget `l`.
pub fn split_lengths(l: u32) -> (u32, u32) {
    let h = l.div_ceil(2) + 2;
    let h = h.min(l);
    (h, l - h + 4)
}

/// Estimated bytes of the suffix tables for these options.
pub fn estimate_table_bytes(opts: &SearchOptions) -> Result<f64> {
    let space = opts.space()?;
    let (_, ls) = split_lengths(opts.max_length as u32);
    Ok(space
        .reachable_states()
        .iter()
        .map(|&st| space.count_words(st, ls, true) * ENTRY_BYTES + space.count_words(st, ls, false) * TRIE_BYTES)
        .sum())
}

/// Same optimum and tie-breaking as the exhaustive search, in roughly square-root time.
pub fn mitm_search(target: &GateTarget, opts: &SearchOptions) -> Result<SearchResult> {
    let space = opts.space()?;
    let fast = FastTarget::new(target)?;
    let table = GeneratorTable::new()?;
    let l = opts.max_length as u32;
    let (h, ls) = split_lengths(l);
    let bytes = estimate_table_bytes(opts)?;
    if bytes > opts.memory_budget {
        return Err(Error::MemoryGuard(format!(
            "suffix tables for length {l} need about {:.2} GB, over the {:.2} GB budget",
            bytes / 1e9,
            opts.memory_budget / 1e9
        )));
    }
    let states = space.reachable_states();
    let built = run_sharded(opts.threads, &states, |&st| SuffixTable::build(&space, &table, st, ls))?;
    let tables: HashMap<State, SuffixTable> = states.iter().copied().zip(built).collect();
    let entries: usize = tables.values().map(|t| t.elems.len()).sum();

    let root = Node { path: Vec::new(), state: space.start_state(), elem: Elem::identity(), len: 0 };
    let (shallow, roots) = shards(&space, &table, root, h, SHARD_DEPTH);
    let tq = *fast.quat();

    let probe = |c: &mut Collector, path: &[(u8, i8)], st: State, a: &Elem, len: u32| {
        let Some(t) = tables.get(&st) else { return };
        let x = tq * a.q.conjugate();
        let x = [x.w, x.i, x.j, x.k];
        let radius = c.best + SLACK + 1e-12;
        t.tree.query(&x, radius, &mut |k, _| {
            if len + t.lens[k as usize] as u32 <= l {
                c.examined += 1;
                let full = a.then(&t.elems[k as usize]);
                c.offer(fast.eps(&full), || {
                    let mut p = path.to_vec();
                    p.extend(t.path(k));
                    p
                });
            }
            c.best + SLACK + 1e-12
        });
    };

    let mut head = Collector::new();
    for node in &shallow {
        probe(&mut head, &node.path, node.state, &node.elem, node.len);
    }
    let mut collectors = run_sharded(opts.threads, &roots, |r| {
        let mut c = Collector::new();
        c.best = head.best;
        dfs(&space, &table, r, h, &mut |path, st, a, len| probe(&mut c, path, st, a, len));
        c
    })?;
    collectors.push(head);
    let notes = format!(
        "mitm: prefixes <= {h}, suffixes <= {ls}, {} tables, {entries} suffix entries, {} shards",
        tables.len(),
        roots.len() + 1
    );
    finalize(collectors, &table, &fast, opts, notes)
}
