use super::rep3::{Elem, FastTarget, GeneratorTable};
use super::space::{dfs, shards, Node};
use super::{finalize, run_sharded, Collector, SearchOptions, SearchResult};
use crate::braid::GateTarget;
use crate::error::{Error, Result};

const SHARD_DEPTH: usize = 2;

/// Enumerate every canonical word up to the length budget and keep the best.
pub fn exhaustive_search(target: &GateTarget, opts: &SearchOptions) -> Result<SearchResult> {
    let space = opts.space()?;
    let fast = FastTarget::new(target)?;
    let table = GeneratorTable::new()?;
    let max_len = opts.max_length as u32;
    let nodes = space.count_words(space.start_state(), max_len, false);
    if nodes > opts.node_budget {
        return Err(Error::BudgetExceeded(format!(
            "{nodes:.3e} words up to length {max_len} exceed the node budget {:.3e}",
            opts.node_budget
        )));
    }
    let root = Node { path: Vec::new(), state: space.start_state(), elem: Elem::identity(), len: 0 };
    let (shallow, roots) = shards(&space, &table, root, max_len, SHARD_DEPTH);

    let mut head = Collector::new();
    for node in &shallow {
        head.examined += 1;
        if space.accepts(node.state) {
            head.offer(fast.eps(&node.elem), || node.path.clone());
        }
    }
    let mut collectors = run_sharded(opts.threads, &roots, |root| {
        let mut c = Collector::new();
        dfs(&space, &table, root, max_len, &mut |path, st, elem, _| {
            c.examined += 1;
            if space.accepts(st) {
                c.offer(fast.eps(elem), || path.to_vec());
            }
        });
        c
    })?;
    collectors.push(head);
    let notes = format!("exhaustive: {} shards, {nodes:.0} words", roots.len() + 1);
    finalize(collectors, &table, &fast, opts, notes)
}
