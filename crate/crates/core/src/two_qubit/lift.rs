//! Moving the control pair as one object.
//!
//! A three-strand weave acts on three effective objects: the control pair and two single
//! strands. The objects sit on four consecutive strands starting at `offset`; the pair
//! occupies two of them according to its current effective slot.

use crate::algebra::{enumerate_basis, QSpin};
use crate::braid::{evaluate, BraidWord, Crossing, Weave};
use crate::error::{Error, Result};
use crate::matrix::CMatrix;

fn check_group(offset: usize, n_strands: usize) -> Result<()> {
    if offset < 1 || offset + 3 > n_strands {
        return Err(Error::InvalidLayout(format!(
            "a four-strand group at offset {offset} does not fit in {n_strands} strands"
        )));
    }
    Ok(())
}

/// Expand each crossing of the mobile pair with a single strand into two interchanges.
///
/// With the pair on strands `(a, a+1)` passing strand `a+2`, the crossing `s^e` (one unit of
/// `e` at a time) becomes `s_{a+1}^{sgn e}` then `s_a^{sgn e}`; from the other side the single
/// strand on `a` meets the pair on `(a+1, a+2)` as `s_a^{sgn e}` then `s_{a+1}^{sgn e}`.
pub fn lift_weave(weave: &Weave, offset: usize, n_strands: usize) -> Result<BraidWord> {
    check_group(offset, n_strands)?;
    if weave.word.n_strands != 3 {
        return Err(Error::DimensionMismatch { left: weave.word.n_strands, right: 3 });
    }
    let mut slot = weave.start_pos;
    let mut out = Vec::new();
    for (ordinal, c) in weave.word.crossings.iter().enumerate() {
        let s = c.exponent.signum();
        for _ in 0..c.exponent.unsigned_abs() {
            let a = offset + c.index - 1;
            if slot == c.index {
                out.push(Crossing::new(a + 1, s));
                out.push(Crossing::new(a, s));
                slot = c.index + 1;
            } else if slot == c.index + 1 {
                out.push(Crossing::new(a, s));
                out.push(Crossing::new(a + 1, s));
                slot = c.index;
            } else {
                return Err(Error::NotAWeave { ordinal: ordinal + 1, index: c.index });
            }
        }
    }
    BraidWord::new(n_strands, out)
}

/// Apply a three-object unitary `g` to the group whose pair is in effective slot 1 at the
/// front of the chain. States with a charge-0 pair are left alone.
fn front_action(g: &CMatrix, n: usize) -> Result<CMatrix> {
    let basis = enumerate_basis(n as i64)?;
    let b3 = enumerate_basis(3)?;
    let dim = basis.dim();
    let mut m = CMatrix::zeros(dim, dim);
    for (col, path) in basis.paths.iter().enumerate() {
        let l = &path.labels;
        if l[0] == QSpin::Zero {
            m[(col, col)] += crate::matrix::c(1.0, 0.0);
            continue;
        }
        let j = b3.index_of(&[l[1], l[2]]).expect("three-object labels");
        for (i, p3) in b3.paths.iter().enumerate() {
            let amp = g[(i, j)];
            if amp.norm() == 0.0 {
                continue;
            }
            let mut labels = l.clone();
            labels[1] = p3.labels[0];
            labels[2] = p3.labels[1];
            match basis.index_of(&labels) {
                Some(row) => m[(row, col)] += amp,
                None if amp.norm() < 1e-12 => {}
                None => return Err(Error::InvalidTarget("effective operator does not conserve charge".into())),
            }
        }
    }
    Ok(m)
}

/// Braid that brings a group at `offset` with the pair in `slot` to the front with the pair
/// first, together with the three-object unitary of its effective part.
fn frame_change(offset: usize, slot: usize, n: usize) -> Result<(BraidWord, CMatrix)> {
    let mut crossings = Vec::new();
    // carry every strand in front of the group to just behind it
    for k in (1..offset).rev() {
        for i in k..k + 4 {
            crossings.push(Crossing::new(i, 1));
        }
    }
    let shift = BraidWord::new(n, crossings)?;
    let eff: Vec<(usize, i64)> = match slot {
        1 => vec![],
        2 => vec![(1, 1)],
        3 => vec![(2, 1), (1, 1)],
        _ => return Err(Error::InvalidLayout(format!("pair slot {slot} is not in 1..=3"))),
    };
    let eff = BraidWord::from_pairs(3, &eff)?;
    let weave = crate::braid::classify_weave(&eff, slot)?;
    let lifted = lift_weave(&weave, 1, n)?;
    let d3 = evaluate(&eff, 3)?.entries;
    Ok((shift.then(&lifted)?, d3))
}

/// The `n`-anyon operator acting as `g` on the group (pair in `slot`) and trivially when the
/// pair has charge 0.
pub fn lift_op(g: &CMatrix, offset: usize, slot: usize, n: usize) -> Result<CMatrix> {
    check_group(offset, n)?;
    if g.shape() != (3, 3) {
        return Err(Error::DimensionMismatch { left: g.nrows(), right: 3 });
    }
    let (frame, d3) = frame_change(offset, slot, n)?;
    let g_front = &d3 * g * d3.adjoint();
    let m = evaluate(&frame, n)?.entries;
    let front = front_action(&g_front, n)?;
    Ok(m.adjoint() * front * m)
}
