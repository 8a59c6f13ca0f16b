//! The canonical three-strand word space and its depth-first enumeration.

use std::collections::HashMap;

use super::rep3::{Elem, GeneratorTable};

/// Exponents of canonical crossings, in non-decreasing magnitude.
pub const EXPONENTS: [i8; 9] = [1, -1, 2, -2, 3, -3, 4, -4, 5];

/// Enumeration state: mobile position (0 outside weave mode) and the last generator (0 at the start).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    pub pos: u8,
    pub last: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Space {
    pub weave: bool,
    pub start: u8,
    pub end: Option<u8>,
}

impl Space {
    pub fn general() -> Self {
        Space { weave: false, start: 0, end: None }
    }

    pub fn weave(start: u8, end: Option<u8>) -> Self {
        Space { weave: true, start, end }
    }

    pub fn start_state(&self) -> State {
        State { pos: if self.weave { self.start } else { 0 }, last: 0 }
    }

    #[inline]
    pub fn allows(&self, st: State, g: u8) -> bool {
        g != st.last && (!self.weave || st.pos == g || st.pos == g + 1)
    }

    #[inline]
    pub fn step(&self, st: State, g: u8, e: i8) -> State {
        let pos = if self.weave && e % 2 != 0 { if st.pos == g { g + 1 } else { g } } else { st.pos };
        State { pos, last: g }
    }

    #[inline]
    pub fn accepts(&self, st: State) -> bool {
        self.end.is_none_or(|e| st.pos == e)
    }

    /// States reachable from the start, in sorted order.
    pub fn reachable_states(&self) -> Vec<State> {
        let mut seen = vec![self.start_state()];
        let mut i = 0;
        while i < seen.len() {
            let st = seen[i];
            for g in 1..=2u8 {
                if !self.allows(st, g) {
                    continue;
                }
                for e in [1i8, 2] {
                    let next = self.step(st, g, e);
                    if !seen.contains(&next) {
                        seen.push(next);
                    }
                }
            }
            i += 1;
        }
        seen.sort();
        seen
    }

    /// Number of words of length at most `budget` starting in `st` (nodes of the search tree).
    pub fn count_words(&self, st: State, budget: u32, accepting_only: bool) -> f64 {
        let mut memo = HashMap::new();
        self.count_rec(st, budget, accepting_only, &mut memo)
    }

    fn count_rec(&self, st: State, budget: u32, acc: bool, memo: &mut HashMap<(State, u32), f64>) -> f64 {
        if let Some(&v) = memo.get(&(st, budget)) {
            return v;
        }
        let mut total = if !acc || self.accepts(st) { 1.0 } else { 0.0 };
        for g in 1..=2u8 {
            if !self.allows(st, g) {
                continue;
            }
            for e in EXPONENTS {
                let len = e.unsigned_abs() as u32;
                if len > budget {
                    break;
                }
                total += self.count_rec(self.step(st, g, e), budget - len, acc, memo);
            }
        }
        memo.insert((st, budget), total);
        total
    }
}

/// A node of the enumeration tree.
#[derive(Clone, Debug)]
pub struct Node {
    pub path: Vec<(u8, i8)>,
    pub state: State,
    pub elem: Elem,
    pub len: u32,
}

/// Visit every word extending `node` up to total length `max_len`, the node itself first.
pub fn dfs<F>(space: &Space, table: &GeneratorTable, node: &Node, max_len: u32, visit: &mut F)
where
    F: FnMut(&[(u8, i8)], State, &Elem, u32),
{
    let mut path = node.path.clone();
    rec(space, table, node.state, node.elem, node.len, max_len, &mut path, visit);
}

#[allow(clippy::too_many_arguments)]
fn rec<F>(space: &Space, table: &GeneratorTable, st: State, elem: Elem, len: u32, max_len: u32, path: &mut Vec<(u8, i8)>, visit: &mut F)
where
    F: FnMut(&[(u8, i8)], State, &Elem, u32),
{
    visit(path, st, &elem, len);
    for g in 1..=2u8 {
        if !space.allows(st, g) {
            continue;
        }
        for e in EXPONENTS {
            let l = len + e.unsigned_abs() as u32;
            if l > max_len {
                break;
            }
            let next = elem.then(table.get(g, e));
            path.push((g, e));
            rec(space, table, space.step(st, g, e), next, l, max_len, path, visit);
            path.pop();
        }
    }
}

/// Split the tree into nodes shallower than `depth` (visited alone) and subtree roots at `depth`.
pub fn shards(space: &Space, table: &GeneratorTable, root: Node, max_len: u32, depth: usize) -> (Vec<Node>, Vec<Node>) {
    let mut shallow = Vec::new();
    let mut frontier = vec![root];
    for _ in 0..depth {
        let mut next = Vec::new();
        for node in frontier {
            for g in 1..=2u8 {
                if !space.allows(node.state, g) {
                    continue;
                }
                for e in EXPONENTS {
                    let l = node.len + e.unsigned_abs() as u32;
                    if l > max_len {
                        break;
                    }
                    let mut path = node.path.clone();
                    path.push((g, e));
                    next.push(Node { path, state: space.step(node.state, g, e), elem: node.elem.then(table.get(g, e)), len: l });
                }
            }
            shallow.push(node);
        }
        frontier = next;
    }
    (shallow, frontier)
}
