use serde::{Deserialize, Serialize};

use super::word::BraidWord;
use crate::error::{Error, Result};

/// A word in which one mobile strand takes part in every crossing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weave {
    pub word: BraidWord,
    /// Strand id of the mobile strand (its starting position).
    pub mobile: usize,
    pub start_pos: usize,
    pub end_pos: usize,
    /// `permutation[p - 1]` is the strand found at position `p` after the word.
    pub permutation: Vec<usize>,
}

impl Weave {
    pub fn returns_to_start(&self) -> bool {
        self.start_pos == self.end_pos
    }

    pub fn inverse(&self) -> Weave {
        classify_weave(&self.word.inverse(), self.end_pos).expect("inverse of a weave is a weave")
    }
}

/// Replay `word` with the mobile strand starting at `mobile_start` (1-based).
///
/// Rejects the word at the first crossing that does not involve the mobile strand.
pub fn classify_weave(word: &BraidWord, mobile_start: usize) -> Result<Weave> {
    let n = word.n_strands;
    if mobile_start < 1 || mobile_start > n {
        return Err(Error::InfeasibleEndpoints(format!("mobile start {mobile_start} is not a position of {n} strands")));
    }
    let mut at: Vec<usize> = (1..=n).collect();
    let mut pos = mobile_start;
    for (k, c) in word.crossings.iter().enumerate() {
        if pos != c.index && pos != c.index + 1 {
            return Err(Error::NotAWeave { ordinal: k + 1, index: c.index });
        }
        if c.exponent.rem_euclid(2) == 1 {
            at.swap(c.index - 1, c.index);
            pos = if pos == c.index { c.index + 1 } else { c.index };
        }
    }
    Ok(Weave { word: word.clone(), mobile: mobile_start, start_pos: mobile_start, end_pos: pos, permutation: at })
}
