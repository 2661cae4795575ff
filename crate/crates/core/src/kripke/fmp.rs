//! Finite frames of a logic and bounded comparison of two logics' frame
//! classes.
//!
//! A frame counts as a frame of the logic when it validates every extra
//! axiom of the presentation; validity is preserved by the inference rules,
//! so the axioms suffice. In tense mode the duality axioms hold on every
//! frame by construction and are not re-checked.

use super::{validates, FiniteFrame, KripkeError, LogicPresentation};
use crate::kripke::enumerate::enumerate_frames;
use rayon::prelude::*;

/// Which side of a comparison a distinguishing frame validates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistinguishedSide {
    Left,
    Right,
}

/// Outcome of a bounded frame-class comparison: either a concrete frame
/// validating exactly one side, or agreement on every frame up to the bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FmpVerdict {
    EqualUpTo(usize),
    Distinguished {
        frame: FiniteFrame,
        side: DistinguishedSide,
    },
}

/// The canonical frames of size at most `max_size` validating every axiom
/// of `logic`, in canonical-code order.
pub fn finite_frames_of(
    logic: &LogicPresentation,
    max_size: usize,
) -> Result<Vec<FiniteFrame>, KripkeError> {
    let frames = enumerate_frames(max_size, logic.mode)?;
    let keep = validity_flags(&frames, logic)?;
    Ok(frames
        .into_iter()
        .zip(keep)
        .filter_map(|(frame, ok)| ok.then_some(frame))
        .collect())
}

/// Compare the frame classes of two presentations over all frames of size
/// at most `max_size`. The first frame in canonical order validating
/// exactly one side decides the verdict.
pub fn fmp_equal_bounded(
    left: &LogicPresentation,
    right: &LogicPresentation,
    max_size: usize,
) -> Result<FmpVerdict, KripkeError> {
    if left.mode != right.mode {
        return Err(KripkeError::ModeMismatch(format!(
            "cannot compare a {} presentation with a {} one",
            left.mode, right.mode
        )));
    }
    let frames = enumerate_frames(max_size, left.mode)?;
    let in_left = validity_flags(&frames, left)?;
    let in_right = validity_flags(&frames, right)?;
    for (frame, (l, r)) in frames.into_iter().zip(in_left.into_iter().zip(in_right)) {
        if l != r {
            let side = if l {
                DistinguishedSide::Left
            } else {
                DistinguishedSide::Right
            };
            return Ok(FmpVerdict::Distinguished { frame, side });
        }
    }
    Ok(FmpVerdict::EqualUpTo(max_size))
}

/// Per-frame conjunction of axiom validity, evaluated frame-parallel with
/// the output order fixed by the input order.
fn validity_flags(
    frames: &[FiniteFrame],
    logic: &LogicPresentation,
) -> Result<Vec<bool>, KripkeError> {
    frames
        .par_iter()
        .map(|frame| {
            for axiom in &logic.axioms {
                if !validates(frame, axiom)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect()
}
