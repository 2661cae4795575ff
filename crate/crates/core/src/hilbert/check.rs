//! The proof verifier and the tautology test it leans on.

use super::{HilbertError, Justification, ProofBase, ProofObject};
use crate::codec::{encode_formula, formula_matches, Code, ModalFormula};
use crate::kripke::Mode;

/// True iff the propositional skeleton of `f` is a truth-table tautology.
/// Boxed subformulas are opaque atoms: the check never looks inside them.
pub fn tautology_check(f: &ModalFormula) -> bool {
    let mut atoms = Vec::new();
    collect_atoms(f, &mut atoms);
    assert!(atoms.len() < 64, "skeleton too wide for a truth table");
    (0..1u64 << atoms.len()).all(|mask| eval_skeleton(f, &atoms, mask))
}

fn collect_atoms(f: &ModalFormula, out: &mut Vec<ModalFormula>) {
    match f {
        ModalFormula::PropVar(_) | ModalFormula::Box(_, _) => {
            if !out.contains(f) {
                out.push(f.clone());
            }
        }
        ModalFormula::Bottom => {}
        ModalFormula::And(a, b) | ModalFormula::Implies(a, b) => {
            collect_atoms(a, out);
            collect_atoms(b, out);
        }
    }
}

fn eval_skeleton(f: &ModalFormula, atoms: &[ModalFormula], mask: u64) -> bool {
    match f {
        ModalFormula::Bottom => false,
        ModalFormula::And(a, b) => {
            eval_skeleton(a, atoms, mask) && eval_skeleton(b, atoms, mask)
        }
        ModalFormula::Implies(a, b) => {
            !eval_skeleton(a, atoms, mask) || eval_skeleton(b, atoms, mask)
        }
        atom => {
            let pos = atoms.iter().position(|a| a == atom).expect("atom collected");
            mask >> pos & 1 == 1
        }
    }
}

pub(crate) fn distribution_schema(slot: u8) -> ModalFormula {
    let p0 = ModalFormula::p(0);
    let p1 = ModalFormula::p(1);
    ModalFormula::implies(
        ModalFormula::boxed(slot, ModalFormula::implies(p0.clone(), p1.clone())),
        ModalFormula::implies(
            ModalFormula::boxed(slot, p0),
            ModalFormula::boxed(slot, p1),
        ),
    )
}

/// `p0 -> box_s not box_{1-s} not p0`.
pub(crate) fn duality_schema(slot: u8) -> ModalFormula {
    let p0 = ModalFormula::p(0);
    ModalFormula::implies(
        p0.clone(),
        ModalFormula::boxed(
            slot,
            ModalFormula::not(ModalFormula::boxed(1 - slot, ModalFormula::not(p0))),
        ),
    )
}

fn check_slot(slot: u8, mode: Mode, what: &str) -> Result<(), HilbertError> {
    if slot > 1 {
        return Err(HilbertError::MalformedProof(format!(
            "{what} uses slot {slot}, only 0 and 1 exist"
        )));
    }
    if slot == 1 && mode == Mode::Unimodal {
        return Err(HilbertError::MalformedProof(format!(
            "{what} uses the converse box in unimodal mode"
        )));
    }
    Ok(())
}

fn check_formula_mode(f: &ModalFormula, mode: Mode) -> Result<(), HilbertError> {
    if mode == Mode::Unimodal && f.uses_converse_box() {
        return Err(HilbertError::MalformedProof(format!(
            "formula {f} uses the converse box in unimodal mode"
        )));
    }
    Ok(())
}

fn apply_cited_substitution(
    axiom: &ModalFormula,
    substitution: &[(usize, ModalFormula)],
) -> Result<ModalFormula, HilbertError> {
    for window in substitution.windows(2) {
        if window[0].0 >= window[1].0 {
            return Err(HilbertError::MalformedProof(
                "substitution variables must be strictly increasing".into(),
            ));
        }
    }
    let width = substitution.iter().map(|(v, _)| v + 1).max().unwrap_or(0);
    let mut mapping: Vec<ModalFormula> = (0..width).map(ModalFormula::PropVar).collect();
    for (v, f) in substitution {
        mapping[*v] = f.clone();
    }
    Ok(axiom.apply_substitution(&mapping))
}

/// Verify a proof of `goal` over the base extended by the optional extra
/// axiom. Structural defects raise `MalformedProof`; an unjustified step or
/// a conclusion other than `goal` returns false.
pub fn check_proof(
    base: &ProofBase,
    extra: Option<&Code>,
    proof: &ProofObject,
    goal: &Code,
) -> Result<bool, HilbertError> {
    if proof.is_empty() {
        return Err(HilbertError::MalformedProof(
            "a proof needs at least one step".into(),
        ));
    }
    let mode = base.mode();
    let extra_formula = match extra {
        Some(code) => {
            let f = crate::codec::decode_formula(code).map_err(|e| {
                HilbertError::MalformedCode(format!("extra axiom: {e}"))
            })?;
            check_formula_mode(&f, mode)?;
            Some(f)
        }
        None => None,
    };
    for (idx, (formula, justification)) in proof.steps().iter().enumerate() {
        check_formula_mode(formula, mode)?;
        let justified = match justification {
            Justification::InBase => match base {
                ProofBase::Oracle { membership, .. } => {
                    membership.contains(&encode_formula(formula))
                }
                ProofBase::Axiomatic(_) => {
                    return Err(HilbertError::MalformedProof(
                        "InBase cited outside oracle mode".into(),
                    ));
                }
            },
            Justification::Tautology => tautology_check(formula),
            Justification::KInstance { slot } => {
                check_slot(*slot, mode, "distribution instance")?;
                formula_matches(&distribution_schema(*slot), formula).is_some()
            }
            Justification::TenseDuality { slot } => {
                if mode != Mode::Tense {
                    return Err(HilbertError::MalformedProof(
                        "duality instance cited in unimodal mode".into(),
                    ));
                }
                check_slot(*slot, mode, "duality instance")?;
                formula_matches(&duality_schema(*slot), formula).is_some()
            }
            Justification::ExtraAxiomInstance { substitution } => {
                let Some(axiom) = &extra_formula else {
                    return Err(HilbertError::MalformedProof(
                        "extra-axiom instance cited but no extra axiom given".into(),
                    ));
                };
                apply_cited_substitution(axiom, substitution)? == *formula
            }
            Justification::BaseAxiomInstance {
                axiom,
                substitution,
            } => match base {
                ProofBase::Axiomatic(logic) => {
                    let Some(ax) = logic.axioms.get(*axiom) else {
                        return Err(HilbertError::MalformedProof(format!(
                            "base axiom {axiom} does not exist"
                        )));
                    };
                    apply_cited_substitution(ax, substitution)? == *formula
                }
                ProofBase::Oracle { .. } => {
                    return Err(HilbertError::MalformedProof(
                        "base-axiom instance cited in oracle mode".into(),
                    ));
                }
            },
            Justification::MP { major, minor } => {
                if *major >= idx || *minor >= idx {
                    return Err(HilbertError::MalformedProof(format!(
                        "step {idx} cites steps {major} and {minor}, which are not earlier"
                    )));
                }
                let major_formula = &proof.steps()[*major].0;
                let minor_formula = &proof.steps()[*minor].0;
                *major_formula
                    == ModalFormula::implies(minor_formula.clone(), formula.clone())
            }
            Justification::Nec { premise, slot } => {
                if *premise >= idx {
                    return Err(HilbertError::MalformedProof(format!(
                        "step {idx} cites step {premise}, which is not earlier"
                    )));
                }
                check_slot(*slot, mode, "necessitation")?;
                *formula
                    == ModalFormula::boxed(*slot, proof.steps()[*premise].0.clone())
            }
        };
        if !justified {
            return Ok(false);
        }
    }
    let conclusion = proof.conclusion().expect("nonempty proof");
    Ok(encode_formula(conclusion) == *goal)
}
