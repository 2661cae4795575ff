//! Arithmetical formulas with set parameters.
//!
//! Quantifiers range over natural numbers (codes); set parameters are
//! reals, i.e. total membership procedures on codes. The builders produce
//! the membership-interval condition, the frame-class comparison condition,
//! and the bounded-pretabularity condition as prenex formulas over a closed
//! library of recursive atoms; the evaluator checks them on an initial
//! segment of the naturals and reports witnesses.
//!
//! Arbitrary reals are not finitely representable, so [`Real`] fixes the
//! supported realizations. Theory approximations carry a declared polarity
//! (under or over the true theory) and every verdict that consulted one is
//! flagged with an [`OracleCaveat`].

mod builders;
mod eval;
mod formula;

pub use builders::{build_fmp_formula, build_interval_formula, build_pretab_formula};
pub use eval::{
    eval_bounded, eval_bounded_naive, eval_bounded_split, replay_falsification, BoundedVerdict,
    EvalReport,
};
pub use formula::{Arg, ArithFormula, Atom, BoolExpr, Clause, Quantifier, SetRef, SigmaPi};

use crate::codec::{decode_equation, decode_formula, encode_equation, is_eq_code, Code, Signature};
use crate::eqlogic::{
    refutes, saturate, table_space, AxiomSet, EqError, RefutationOutcome, SaturationBudget,
    DEFAULT_ALGEBRA_CEILING,
};
use crate::hilbert::{search_proof, CodeOracle};
use crate::kripke::{finite_frames_of, validates, FiniteFrame, KripkeError, LogicPresentation, Mode};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("bad assignment: {0}")]
    Assignment(String),
    #[error("malformed formula: {0}")]
    MalformedFormula(String),
    #[error("unsupported quantifier prefix: {0}")]
    UnsupportedPrefix(String),
    #[error(transparent)]
    Eq(#[from] EqError),
    #[error(transparent)]
    Kripke(#[from] KripkeError),
}

/// Which side a theory approximation can err on: an under-approximation may
/// miss members, an over-approximation may report non-members as members.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarity {
    Under,
    Over,
}

/// Notice attached to a verdict that consulted an approximate membership
/// procedure: a flipped answer from that parameter could change the verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCaveat {
    /// Name of the parameter or free set-variable holding the approximation.
    pub parameter: String,
    pub polarity: Polarity,
}

/// Bounded stand-in for the full theory of an axiom set or logic
/// presentation, with a declared error direction. Membership is total and
/// deterministic; codes that denote no object of the right category are
/// never members.
#[derive(Debug)]
pub struct TheoryApprox {
    kind: ApproxKind,
}

#[derive(Debug)]
enum ApproxKind {
    EquationalUnder {
        derived: BTreeSet<Code>,
    },
    EquationalOver {
        axioms: AxiomSet,
        max_algebra_size: usize,
        cache: Mutex<BTreeMap<Code, bool>>,
    },
    ModalUnder {
        logic: LogicPresentation,
        proof_length_bound: usize,
        cache: Mutex<BTreeMap<Code, bool>>,
    },
    ModalOver {
        logic: LogicPresentation,
        frames: Vec<FiniteFrame>,
        cache: Mutex<BTreeMap<Code, bool>>,
    },
}

impl TheoryApprox {
    /// Everything derivable from `axioms` within `budget`, saturated
    /// eagerly at construction so that membership is a set lookup.
    pub fn equational_under(axioms: &AxiomSet, budget: SaturationBudget) -> TheoryApprox {
        let derived = saturate(axioms, budget)
            .derived()
            .iter()
            .map(encode_equation)
            .collect();
        TheoryApprox {
            kind: ApproxKind::EquationalUnder { derived },
        }
    }

    /// Everything not refuted by an algebra of at most `max_algebra_size`
    /// elements. Every queried size must fit under the enumeration ceiling,
    /// checked here once so membership stays total.
    pub fn equational_over(
        axioms: &AxiomSet,
        max_algebra_size: usize,
    ) -> Result<TheoryApprox, ArithError> {
        for size in 1..=max_algebra_size {
            match table_space(axioms.signature(), size) {
                Some(space) if space <= u128::from(DEFAULT_ALGEBRA_CEILING) => {}
                _ => {
                    return Err(EqError::EnumerationTooLarge(format!(
                        "algebras of size {size} exceed the enumeration ceiling"
                    ))
                    .into())
                }
            }
        }
        Ok(TheoryApprox {
            kind: ApproxKind::EquationalOver {
                axioms: axioms.clone(),
                max_algebra_size,
                cache: Mutex::new(BTreeMap::new()),
            },
        })
    }

    /// Everything provable from `logic` by a proof of at most
    /// `proof_length_bound` steps (searched with the usual size headroom).
    pub fn modal_under(logic: &LogicPresentation, proof_length_bound: usize) -> TheoryApprox {
        TheoryApprox {
            kind: ApproxKind::ModalUnder {
                logic: logic.clone(),
                proof_length_bound,
                cache: Mutex::new(BTreeMap::new()),
            },
        }
    }

    /// Everything valid on every frame of the presentation's frame class up
    /// to `max_frame_size` points. An empty frame class admits every
    /// formula of the mode.
    pub fn modal_over(
        logic: &LogicPresentation,
        max_frame_size: usize,
    ) -> Result<TheoryApprox, ArithError> {
        let frames = finite_frames_of(logic, max_frame_size)?;
        Ok(TheoryApprox {
            kind: ApproxKind::ModalOver {
                logic: logic.clone(),
                frames,
                cache: Mutex::new(BTreeMap::new()),
            },
        })
    }

    pub fn polarity(&self) -> Polarity {
        match self.kind {
            ApproxKind::EquationalUnder { .. } | ApproxKind::ModalUnder { .. } => Polarity::Under,
            ApproxKind::EquationalOver { .. } | ApproxKind::ModalOver { .. } => Polarity::Over,
        }
    }

    fn contains(&self, code: &Code) -> bool {
        match &self.kind {
            ApproxKind::EquationalUnder { derived } => derived.contains(code),
            ApproxKind::EquationalOver {
                axioms,
                max_algebra_size,
                cache,
            } => {
                if !is_eq_code(code, axioms.signature()) {
                    return false;
                }
                if let Some(&hit) = cache.lock().unwrap().get(code) {
                    return hit;
                }
                let verdict = match decode_equation(code, axioms.signature()) {
                    Ok(eq) => match refutes(axioms, &eq, *max_algebra_size) {
                        Ok(RefutationOutcome::CounterModel { .. }) => false,
                        Ok(RefutationOutcome::Unknown) | Err(_) => true,
                    },
                    Err(_) => false,
                };
                cache.lock().unwrap().insert(code.clone(), verdict);
                verdict
            }
            ApproxKind::ModalUnder {
                logic,
                proof_length_bound,
                cache,
            } => {
                let Ok(f) = decode_formula(code) else {
                    return false;
                };
                if logic.mode == Mode::Unimodal && f.uses_converse_box() {
                    return false;
                }
                if let Some(&hit) = cache.lock().unwrap().get(code) {
                    return hit;
                }
                let verdict =
                    search_proof(logic, None, code, *proof_length_bound, f.size() + 4).is_found();
                cache.lock().unwrap().insert(code.clone(), verdict);
                verdict
            }
            ApproxKind::ModalOver {
                logic,
                frames,
                cache,
            } => {
                let Ok(f) = decode_formula(code) else {
                    return false;
                };
                if logic.mode == Mode::Unimodal && f.uses_converse_box() {
                    return false;
                }
                if let Some(&hit) = cache.lock().unwrap().get(code) {
                    return hit;
                }
                let verdict = frames.iter().all(|fr| validates(fr, &f).unwrap_or(false));
                cache.lock().unwrap().insert(code.clone(), verdict);
                verdict
            }
        }
    }
}

/// A total membership procedure on codes: the supported realizations of a
/// subset of the naturals.
#[derive(Debug, Clone)]
pub enum Real {
    /// Exactly these codes.
    FiniteSet(BTreeSet<Code>),
    /// Every code except these.
    CofiniteComplement(BTreeSet<Code>),
    /// Membership read off a bit string, with a default bit past its end.
    ExplicitPrefix { bits: Vec<bool>, default: bool },
    /// Bounded theory approximation with a declared polarity.
    TheoryApprox(Arc<TheoryApprox>),
    /// `{2n : n in A} + {2n+1 : n in B}`.
    Join(Box<Real>, Box<Real>),
    /// All well-formed equation codes over a signature.
    AllEquations(Signature),
    /// All well-formed formula codes evaluable in a mode.
    AllFormulas(Mode),
}

impl Real {
    pub fn empty() -> Real {
        Real::FiniteSet(BTreeSet::new())
    }

    pub fn finite(codes: impl IntoIterator<Item = Code>) -> Real {
        Real::FiniteSet(codes.into_iter().collect())
    }

    pub fn approx(approx: TheoryApprox) -> Real {
        Real::TheoryApprox(Arc::new(approx))
    }

    pub fn contains(&self, code: &Code) -> bool {
        match self {
            Real::FiniteSet(set) => set.contains(code),
            Real::CofiniteComplement(set) => !set.contains(code),
            Real::ExplicitPrefix { bits, default } => match code.to_usize() {
                Some(i) if i < bits.len() => bits[i],
                _ => *default,
            },
            Real::TheoryApprox(approx) => approx.contains(code),
            Real::Join(evens, odds) => {
                let half = Code::from(&code.0 >> 1u32);
                if code.is_even() {
                    evens.contains(&half)
                } else {
                    odds.contains(&half)
                }
            }
            Real::AllEquations(sig) => is_eq_code(code, sig),
            Real::AllFormulas(mode) => match decode_formula(code) {
                Ok(f) => *mode == Mode::Tense || !f.uses_converse_box(),
                Err(_) => false,
            },
        }
    }

    fn caveats_into(&self, name: &str, out: &mut Vec<OracleCaveat>) {
        match self {
            Real::TheoryApprox(approx) => {
                let caveat = OracleCaveat {
                    parameter: name.to_string(),
                    polarity: approx.polarity(),
                };
                if !out.contains(&caveat) {
                    out.push(caveat);
                }
            }
            Real::Join(evens, odds) => {
                evens.caveats_into(name, out);
                odds.caveats_into(name, out);
            }
            _ => {}
        }
    }
}

/// The effective join: even codes consult `a`, odd codes consult `b`.
pub fn join(a: Real, b: Real) -> Real {
    Real::Join(Box::new(a), Box::new(b))
}

impl CodeOracle for Real {
    fn contains(&self, code: &Code) -> bool {
        Real::contains(self, code)
    }
}
