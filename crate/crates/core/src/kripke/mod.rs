//! Finite Kripke frames and their logics.
//!
//! A frame is a nonempty finite carrier `{0, ..., size-1}` with one binary
//! accessibility relation. In unimodal mode only the slot-0 box is
//! meaningful; in tense mode the slot-1 box is evaluated along the converse
//! of the stored relation, so a single relation still determines both
//! operators.

mod enumerate;
mod fmp;
mod validate;

pub use enumerate::{enumerate_frames, enumerate_frames_with_ceiling, DEFAULT_FRAME_SIZE_CEILING};
pub use fmp::{finite_frames_of, fmp_equal_bounded, DistinguishedSide, FmpVerdict};
pub use validate::{validates, validates_naive};

use crate::codec::ModalFormula;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Interpretation mode: one box, or two boxes linked by converse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mode {
    Unimodal,
    Tense,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Unimodal => write!(f, "unimodal"),
            Mode::Tense => write!(f, "tense"),
        }
    }
}

/// A finite frame: carrier size, edge set, and interpretation mode.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteFrame {
    size: usize,
    edges: BTreeSet<(usize, usize)>,
    mode: Mode,
}

impl FiniteFrame {
    /// Build a frame, rejecting an empty carrier or out-of-range endpoints.
    pub fn new(
        size: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        mode: Mode,
    ) -> Result<Self, KripkeError> {
        if size == 0 {
            return Err(KripkeError::EmptyCarrier);
        }
        let edges: BTreeSet<(usize, usize)> = edges.into_iter().collect();
        for &(a, b) in &edges {
            if a >= size || b >= size {
                return Err(KripkeError::EdgeOutOfRange { edge: (a, b), size });
            }
        }
        Ok(FiniteFrame { size, edges, mode })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_mode(&self, mode: Mode) -> FiniteFrame {
        FiniteFrame {
            size: self.size,
            edges: self.edges.clone(),
            mode,
        }
    }

    /// True when the formula can be evaluated on this frame: the slot-1 box
    /// requires tense mode.
    pub fn accepts(&self, formula: &ModalFormula) -> bool {
        self.mode == Mode::Tense || !formula.uses_converse_box()
    }

    /// Relation bitmask, row-major: cell `(i, j)` is bit `i * size + j`.
    /// Only available for frames small enough for the mask to fit.
    pub fn bitmask(&self) -> Option<u128> {
        if self.size * self.size > 128 {
            return None;
        }
        let mut mask = 0u128;
        for &(a, b) in &self.edges {
            mask |= 1u128 << (a * self.size + b);
        }
        Some(mask)
    }

    /// Apply a carrier permutation: edge `(a, b)` becomes `(perm[a], perm[b])`.
    pub fn relabel(&self, perm: &[usize]) -> FiniteFrame {
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| (perm[a], perm[b]))
            .collect();
        FiniteFrame {
            size: self.size,
            edges,
            mode: self.mode,
        }
    }
}

impl fmt::Display for FiniteFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::codec::format_frame(self))
    }
}

/// A finitely axiomatized normal logic: a mode plus extra axioms over the
/// minimal normal logic of that mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicPresentation {
    pub mode: Mode,
    pub axioms: Vec<ModalFormula>,
}

impl LogicPresentation {
    pub fn new(mode: Mode, axioms: Vec<ModalFormula>) -> Result<Self, KripkeError> {
        if mode == Mode::Unimodal {
            if let Some(bad) = axioms.iter().find(|a| a.uses_converse_box()) {
                return Err(KripkeError::ModeMismatch(format!(
                    "axiom {bad} uses the converse box but the presentation is unimodal"
                )));
            }
        }
        Ok(LogicPresentation { mode, axioms })
    }

    /// The minimal normal logic of the given mode: no extra axioms.
    pub fn minimal(mode: Mode) -> Self {
        LogicPresentation { mode, axioms: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KripkeError {
    #[error("frames need a nonempty carrier")]
    EmptyCarrier,
    #[error("edge {edge:?} out of range for carrier of size {size}")]
    EdgeOutOfRange { edge: (usize, usize), size: usize },
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("enumeration too large: {0}")]
    EnumerationTooLarge(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frame_construction_validates_edges() {
        assert!(FiniteFrame::new(0, [], Mode::Unimodal).is_err());
        assert!(FiniteFrame::new(2, [(0, 2)], Mode::Unimodal).is_err());
        let f = FiniteFrame::new(2, [(0, 1), (1, 0)], Mode::Tense).unwrap();
        assert_eq!(f.size(), 2);
        assert_eq!(f.edges().len(), 2);
    }

    #[test]
    fn bitmask_is_row_major() {
        let f = FiniteFrame::new(2, [(0, 1), (1, 0)], Mode::Unimodal).unwrap();
        // (0,1) -> bit 1, (1,0) -> bit 2.
        assert_eq!(f.bitmask(), Some(0b0110));
    }

    #[test]
    fn unimodal_frames_reject_converse_formulas() {
        let f = FiniteFrame::new(1, [], Mode::Unimodal).unwrap();
        let tense = ModalFormula::boxed(1, ModalFormula::p(0));
        assert!(!f.accepts(&tense));
        assert!(f.with_mode(Mode::Tense).accepts(&tense));
    }

    #[test]
    fn unimodal_presentations_reject_tense_axioms() {
        let tense_axiom = ModalFormula::boxed(1, ModalFormula::p(0));
        assert!(LogicPresentation::new(Mode::Unimodal, vec![tense_axiom.clone()]).is_err());
        assert!(LogicPresentation::new(Mode::Tense, vec![tense_axiom]).is_ok());
    }
}
