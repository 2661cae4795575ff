//! Hilbert-style proof objects for normal modal and tense logics.
//!
//! A proof is a list of steps, each a formula with a justification; the
//! checker is a pure verifier. Proofs are checked against a base, which is
//! either an arbitrary membership oracle over formula codes or a finite
//! axiomatization, optionally extended by one extra axiom whose instances
//! may be cited. Uniform substitution happens at citation time (an axiom is
//! cited together with the substitution that instantiates it), not as a
//! standalone inference rule; the derivable strength is the same and each
//! step stays locally checkable.

mod check;
mod coding;
mod pretab;
mod search;

pub use check::{check_proof, tautology_check};
pub(crate) use check::{distribution_schema, duality_schema};
pub use coding::{decode_proof, encode_proof};
pub use pretab::{
    pretabular_bounded, DischargedBy, PretabOutcome, PretabReport, TabTable,
};
pub use search::{search_proof, SearchOutcome};

use crate::codec::{Code, ModalFormula};
use crate::kripke::{LogicPresentation, Mode};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HilbertError {
    /// Structurally broken proof: out-of-range indices, slot misuse, bad
    /// substitution shape, or an empty step list.
    #[error("malformed proof: {0}")]
    MalformedProof(String),
    /// A number that should code a proof, formula, or substitution does not.
    #[error("malformed code: {0}")]
    MalformedCode(String),
    /// A tab table file or entry is unusable.
    #[error("bad tab table: {0}")]
    BadTabTable(String),
    /// An operation got a logic in the wrong mode.
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),
}

/// Membership oracle over formula codes; the arbitrary-parameter form of a
/// proof base.
pub trait CodeOracle {
    fn contains(&self, code: &Code) -> bool;
}

impl CodeOracle for BTreeSet<Code> {
    fn contains(&self, code: &Code) -> bool {
        BTreeSet::contains(self, code)
    }
}

/// Adapter for closures.
pub struct FnOracle<F>(pub F);

impl<F: Fn(&Code) -> bool> CodeOracle for FnOracle<F> {
    fn contains(&self, code: &Code) -> bool {
        (self.0)(code)
    }
}

/// What a proof is checked against: a membership oracle plus a mode, or a
/// finite presentation whose axioms can be cited with substitutions.
pub enum ProofBase<'a> {
    Oracle {
        membership: &'a dyn CodeOracle,
        mode: Mode,
    },
    Axiomatic(&'a LogicPresentation),
}

impl ProofBase<'_> {
    pub fn mode(&self) -> Mode {
        match self {
            ProofBase::Oracle { mode, .. } => *mode,
            ProofBase::Axiomatic(logic) => logic.mode,
        }
    }
}

/// One way a proof line may be justified. Substitutions list the replaced
/// variables in strictly increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    /// The formula's code is in the base membership oracle (oracle mode).
    InBase,
    /// The propositional skeleton is a truth-table tautology.
    Tautology,
    /// Instance of the distribution schema of the given box.
    KInstance { slot: u8 },
    /// Instance of the duality schema tying one box to the converse box.
    TenseDuality { slot: u8 },
    /// Instance of the single extra axiom.
    ExtraAxiomInstance {
        substitution: Vec<(usize, ModalFormula)>,
    },
    /// Instance of a numbered base axiom (axiomatic mode).
    BaseAxiomInstance {
        axiom: usize,
        substitution: Vec<(usize, ModalFormula)>,
    },
    /// Modus ponens from two earlier steps: `major` is the implication.
    MP { major: usize, minor: usize },
    /// Necessitation of an earlier step with the given box.
    Nec { premise: usize, slot: u8 },
}

/// A Hilbert-style proof: the last step's formula is the conclusion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofObject {
    steps: Vec<(ModalFormula, Justification)>,
}

impl ProofObject {
    pub fn new(steps: Vec<(ModalFormula, Justification)>) -> Self {
        ProofObject { steps }
    }

    pub fn steps(&self) -> &[(ModalFormula, Justification)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn conclusion(&self) -> Option<&ModalFormula> {
        self.steps.last().map(|(f, _)| f)
    }
}
