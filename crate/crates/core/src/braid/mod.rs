//! Braid-word IR: text form, free reduction, evaluation, distances and weaves.

pub mod metric;
pub mod target;
pub mod weave;
pub mod word;

pub use metric::{distance, phase_distance, phase_distance_numeric};
pub use target::{named_target, pauli_x, sigma_power3, GateTarget, TargetMode, NC_INDEX};
pub use weave::{classify_weave, Weave};
pub use word::{fold_exponent, format, parse, parse_lines, BraidWord, Crossing};

use crate::algebra::{representation, BlockUnitary};
use crate::error::{Error, Result};

/// Product of generator powers, first crossing rightmost.
pub fn evaluate(word: &BraidWord, n: usize) -> Result<BlockUnitary> {
    if word.n_strands != n {
        return Err(Error::DimensionMismatch { left: word.n_strands, right: n });
    }
    let rep = representation(n)?;
    let mut u = rep.identity();
    for c in &word.crossings {
        let e = fold_exponent(c.exponent) as i32;
        if e != 0 {
            u.entries = rep.power(c.index, e) * &u.entries;
        }
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{identity, op_norm, unitary_power};

    #[test]
    fn evaluation_examples() {
        let e = evaluate(&BraidWord::empty(3), 3).unwrap();
        assert!(op_norm(&(e.entries - identity(3))) < 1e-15);
        let a = evaluate(&BraidWord::from_pairs(3, &[(1, 1), (2, 1), (1, 1)]).unwrap(), 3).unwrap();
        let b = evaluate(&BraidWord::from_pairs(3, &[(2, 1), (1, 1), (2, 1)]).unwrap(), 3).unwrap();
        assert!(op_norm(&(a.entries - b.entries)) < 1e-12);
        let ten = evaluate(&BraidWord::from_pairs(3, &[(1, 10)]).unwrap(), 3).unwrap();
        assert!(op_norm(&(ten.entries - identity(3))) < 1e-12);
        assert!(evaluate(&BraidWord::empty(3), 4).is_err());
    }

    #[test]
    fn folding_matches_matrix_powers() {
        let rep = crate::algebra::representation(3).unwrap();
        for (e, f) in [(7, -3), (6, -4), (-5, 5)] {
            let lhs = unitary_power(rep.generator(1), e);
            let rhs = unitary_power(rep.generator(1), f);
            assert!(op_norm(&(lhs - rhs)) < 1e-12);
        }
    }

    #[test]
    fn order_is_first_crossing_first() {
        let rep = crate::algebra::representation(3).unwrap();
        let w = BraidWord::from_pairs(3, &[(1, 1), (2, 1)]).unwrap();
        let want = rep.generator(2) * rep.generator(1);
        assert!(op_norm(&(evaluate(&w, 3).unwrap().entries - want)) < 1e-14);
    }
}
