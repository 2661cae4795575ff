//! Equational consequence, bounded.
//!
//! The closure of an axiom set under reflexivity, symmetry, transitivity,
//! replacement, and substitution is an infinite least fixed point; this
//! module executes it over a finite term universe (a node-count bound and a
//! variable-alphabet bound) so that everything terminates and every derived
//! equation carries a replayable trace. The semantic side is a brute-force
//! finite-algebra oracle used for refutation and soundness cross-checks.

mod algebra;
mod saturate;

pub use algebra::{
    enumerate_algebras, enumerate_algebras_with_ceiling, holds_in, refutes, refutes_with_ceiling,
    table_space, FiniteAlgebra, RefutationOutcome, DEFAULT_ALGEBRA_CEILING,
};
pub use saturate::{
    derives, saturate, term_universe, DerivationOutcome, SaturationResult, Step,
};

use crate::codec::{Equation, Signature};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EqError {
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("budget bounds must all be at least 1")]
    InvalidBudget,
    #[error("enumeration too large: {0}")]
    EnumerationTooLarge(String),
}

/// A signature together with a deduplicated, deterministically ordered list
/// of well-formed axioms over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomSet {
    signature: Signature,
    axioms: Vec<Equation>,
}

impl AxiomSet {
    pub fn new(
        signature: Signature,
        axioms: impl IntoIterator<Item = Equation>,
    ) -> Result<Self, EqError> {
        let mut list: Vec<Equation> = Vec::new();
        for eq in axioms {
            if !eq.conforms_to(&signature) {
                return Err(EqError::SignatureMismatch(format!(
                    "axiom {eq} does not fit the signature"
                )));
            }
            list.push(eq);
        }
        list.sort();
        list.dedup();
        Ok(AxiomSet {
            signature,
            axioms: list,
        })
    }

    pub fn empty(signature: Signature) -> Self {
        AxiomSet {
            signature,
            axioms: Vec::new(),
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn axioms(&self) -> &[Equation] {
        &self.axioms
    }
}

/// Bounds that make saturation finite: a term-size cap (node count), the
/// number of usable variables `x_0..x_{max_vars-1}`, and an iteration cap on
/// processed worklist entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SaturationBudget {
    max_term_size: usize,
    max_vars: usize,
    max_iterations: usize,
}

impl SaturationBudget {
    pub fn new(
        max_term_size: usize,
        max_vars: usize,
        max_iterations: usize,
    ) -> Result<Self, EqError> {
        if max_term_size == 0 || max_vars == 0 || max_iterations == 0 {
            return Err(EqError::InvalidBudget);
        }
        Ok(SaturationBudget {
            max_term_size,
            max_vars,
            max_iterations,
        })
    }

    pub fn max_term_size(&self) -> usize {
        self.max_term_size
    }

    pub fn max_vars(&self) -> usize {
        self.max_vars
    }

    pub fn max_iterations(&self) -> usize {
        self.max_iterations
    }
}
