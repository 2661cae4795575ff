//! Bounded proof search over a finite formula pool.
//!
//! The pool is seeded with every subformula of the goal, the extra axiom,
//! and the base axioms, plus bottom, then closed one level under implication
//! and boxing, dropping anything larger than the size bound. Directly
//! justifiable pool formulas are marked first, then modus ponens and
//! necessitation run to a fixpoint. A proof whose intermediate formulas fall
//! outside the pool is out of reach, so Unknown never means unprovable.

use super::check::{distribution_schema, duality_schema};
use super::{tautology_check, Justification, ProofObject};
use crate::codec::{decode_formula, formula_matches, Code, ModalFormula};
use crate::kripke::{LogicPresentation, Mode};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(ProofObject),
    Unknown,
}

impl SearchOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn into_proof(self) -> Option<ProofObject> {
        match self {
            SearchOutcome::Found(p) => Some(p),
            SearchOutcome::Unknown => None,
        }
    }
}

enum Provenance {
    Direct(Justification),
    ByMp {
        major: ModalFormula,
        minor: ModalFormula,
    },
    ByNec {
        premise: ModalFormula,
        slot: u8,
    },
}

fn subformulas_into(f: &ModalFormula, bound: usize, pool: &mut BTreeSet<ModalFormula>) {
    if f.size() <= bound {
        pool.insert(f.clone());
    }
    match f {
        ModalFormula::PropVar(_) | ModalFormula::Bottom => {}
        ModalFormula::And(a, b) | ModalFormula::Implies(a, b) => {
            subformulas_into(a, bound, pool);
            subformulas_into(b, bound, pool);
        }
        ModalFormula::Box(_, a) => subformulas_into(a, bound, pool),
    }
}

fn slots(mode: Mode) -> &'static [u8] {
    match mode {
        Mode::Unimodal => &[0],
        Mode::Tense => &[0, 1],
    }
}

fn binding_to_substitution(
    binding: BTreeMap<usize, ModalFormula>,
) -> Vec<(usize, ModalFormula)> {
    binding.into_iter().collect()
}

fn direct_justification(
    f: &ModalFormula,
    logic: &LogicPresentation,
    extra: Option<&ModalFormula>,
) -> Option<Justification> {
    if tautology_check(f) {
        return Some(Justification::Tautology);
    }
    for &slot in slots(logic.mode) {
        if formula_matches(&distribution_schema(slot), f).is_some() {
            return Some(Justification::KInstance { slot });
        }
    }
    if logic.mode == Mode::Tense {
        for slot in [0, 1] {
            if formula_matches(&duality_schema(slot), f).is_some() {
                return Some(Justification::TenseDuality { slot });
            }
        }
    }
    for (axiom, pattern) in logic.axioms.iter().enumerate() {
        if let Some(binding) = formula_matches(pattern, f) {
            return Some(Justification::BaseAxiomInstance {
                axiom,
                substitution: binding_to_substitution(binding),
            });
        }
    }
    if let Some(pattern) = extra {
        if let Some(binding) = formula_matches(pattern, f) {
            return Some(Justification::ExtraAxiomInstance {
                substitution: binding_to_substitution(binding),
            });
        }
    }
    None
}

/// Premises-first listing of the provenance tree below `goal`.
fn chain(
    goal: &ModalFormula,
    proved: &BTreeMap<ModalFormula, Provenance>,
) -> Vec<ModalFormula> {
    let mut out = Vec::new();
    let mut done = BTreeSet::new();
    let mut stack = vec![(goal.clone(), false)];
    while let Some((f, expanded)) = stack.pop() {
        if done.contains(&f) {
            continue;
        }
        if expanded {
            done.insert(f.clone());
            out.push(f);
            continue;
        }
        stack.push((f.clone(), true));
        match &proved[&f] {
            Provenance::Direct(_) => {}
            Provenance::ByMp { major, minor } => {
                stack.push((major.clone(), false));
                stack.push((minor.clone(), false));
            }
            Provenance::ByNec { premise, .. } => stack.push((premise.clone(), false)),
        }
    }
    out
}

/// Look for a proof of `goal` in `logic` plus the optional extra axiom, with
/// at most `length_bound` steps and no formula larger than
/// `formula_size_bound` nodes. Found proofs pass the verifier; Unknown makes
/// no claim. Codes that do not decode also give Unknown.
pub fn search_proof(
    logic: &LogicPresentation,
    extra: Option<&Code>,
    goal: &Code,
    length_bound: usize,
    formula_size_bound: usize,
) -> SearchOutcome {
    if length_bound == 0 || formula_size_bound == 0 {
        return SearchOutcome::Unknown;
    }
    let Ok(goal_formula) = decode_formula(goal) else {
        return SearchOutcome::Unknown;
    };
    let extra_formula = match extra {
        Some(code) => match decode_formula(code) {
            Ok(f) => Some(f),
            Err(_) => return SearchOutcome::Unknown,
        },
        None => None,
    };
    if logic.mode == Mode::Unimodal
        && (goal_formula.uses_converse_box()
            || extra_formula
                .as_ref()
                .is_some_and(ModalFormula::uses_converse_box))
    {
        return SearchOutcome::Unknown;
    }

    let mut pool = BTreeSet::new();
    subformulas_into(&goal_formula, formula_size_bound, &mut pool);
    if let Some(f) = &extra_formula {
        subformulas_into(f, formula_size_bound, &mut pool);
    }
    for axiom in &logic.axioms {
        subformulas_into(axiom, formula_size_bound, &mut pool);
    }
    pool.insert(ModalFormula::Bottom);
    let seeds: Vec<ModalFormula> = pool.iter().cloned().collect();
    for a in &seeds {
        for b in &seeds {
            if a.size() + b.size() + 1 <= formula_size_bound {
                pool.insert(ModalFormula::implies(a.clone(), b.clone()));
            }
        }
        if a.size() + 1 <= formula_size_bound {
            for &slot in slots(logic.mode) {
                pool.insert(ModalFormula::boxed(slot, a.clone()));
            }
        }
    }

    let mut proved: BTreeMap<ModalFormula, Provenance> = BTreeMap::new();
    for f in &pool {
        if let Some(j) = direct_justification(f, logic, extra_formula.as_ref()) {
            proved.insert(f.clone(), Provenance::Direct(j));
        }
    }
    loop {
        let mut changed = false;
        for f in &pool {
            if proved.contains_key(f) {
                continue;
            }
            let mut provenance = None;
            for g in proved.keys() {
                if let ModalFormula::Implies(a, b) = g {
                    if **b == *f && proved.contains_key(a) {
                        provenance = Some(Provenance::ByMp {
                            major: g.clone(),
                            minor: (**a).clone(),
                        });
                        break;
                    }
                }
            }
            if provenance.is_none() {
                if let ModalFormula::Box(slot, inner) = f {
                    if proved.contains_key(inner) {
                        provenance = Some(Provenance::ByNec {
                            premise: (**inner).clone(),
                            slot: *slot,
                        });
                    }
                }
            }
            if let Some(p) = provenance {
                proved.insert(f.clone(), p);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    if !proved.contains_key(&goal_formula) {
        return SearchOutcome::Unknown;
    }
    let order = chain(&goal_formula, &proved);
    if order.len() > length_bound {
        return SearchOutcome::Unknown;
    }
    let mut index: BTreeMap<ModalFormula, usize> = BTreeMap::new();
    let mut steps = Vec::new();
    for f in order {
        let justification = match &proved[&f] {
            Provenance::Direct(j) => j.clone(),
            Provenance::ByMp { major, minor } => Justification::MP {
                major: index[major],
                minor: index[minor],
            },
            Provenance::ByNec { premise, slot } => Justification::Nec {
                premise: index[premise],
                slot: *slot,
            },
        };
        index.insert(f.clone(), steps.len());
        steps.push((f, justification));
    }
    SearchOutcome::Found(ProofObject::new(steps))
}
