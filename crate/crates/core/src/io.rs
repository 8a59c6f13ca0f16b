//! JSON forms of matrices and search results.

use serde::{Deserialize, Serialize};

use crate::algebra::{BlockUnitary, ChargeBlock};
use crate::braid::format;
use crate::error::{Error, Result};
use crate::matrix::{c, CMatrix};
use crate::search::SearchResult;

/// A total-charge block as `{charge: 0 | 1, start, end}` (end exclusive).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockJson {
    pub charge: u8,
    pub start: usize,
    pub end: usize,
}

/// `{dim, blocks, entries}` with entries as rows of `[re, im]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    #[serde(default)]
    pub blocks: Vec<BlockJson>,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixJson {
    pub fn new(m: &CMatrix, blocks: &[ChargeBlock]) -> Self {
        let entries = (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect()).collect();
        let blocks = blocks.iter().map(|b| BlockJson { charge: b.charge.bit() as u8, start: b.start, end: b.end }).collect();
        MatrixJson { dim: m.nrows(), blocks, entries }
    }

    pub fn from_block_unitary(u: &BlockUnitary) -> Self {
        Self::new(&u.entries, &u.blocks)
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        let n = self.entries.len();
        if n != self.dim || self.entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidTarget(format!("matrix JSON is not {0}x{0}", self.dim)));
        }
        Ok(CMatrix::from_fn(n, n, |i, j| c(self.entries[i][j][0], self.entries[i][j][1])))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub word: String,
    pub length: u64,
    pub epsilon: f64,
    pub phase: f64,
    pub nc_phase: f64,
    pub words_examined: u64,
    pub weave_start: Option<usize>,
    pub weave_end: Option<usize>,
}

impl From<&SearchResult> for SearchReport {
    fn from(r: &SearchResult) -> Self {
        SearchReport {
            word: format(&r.best_word),
            length: r.best_word.length(),
            epsilon: r.epsilon,
            phase: r.phase,
            nc_phase: r.nc_phase,
            words_examined: r.words_examined,
            weave_start: r.weave.as_ref().map(|w| w.start_pos),
            weave_end: r.weave.as_ref().map(|w| w.end_pos),
        }
    }
}
