//! Recursive predicates on codes: single-occurrence replacement and
//! substitution instances. These are the relations the arithmetical
//! transcriptions quantify over, so they must be total and decidable.

use super::codes::{decode_equation, decode_term, encode_equation};
use super::pairing::{unpair, Code};
use super::syntax::{Equation, ModalFormula, Signature, Term};
use super::Result;
use std::collections::BTreeMap;

/// All terms obtainable from `t` by replacing exactly one occurrence of
/// `eq.left` by `eq.right`, in left-to-right occurrence order. Duplicates are
/// kept out; a term with no occurrence of `eq.left` yields the empty list.
pub fn replacement_results(t: &Term, eq: &Equation) -> Vec<Term> {
    let mut out = Vec::new();
    collect_replacements(t, eq, &mut out);
    out.dedup();
    out.sort();
    out.dedup();
    out
}

fn collect_replacements(t: &Term, eq: &Equation, out: &mut Vec<Term>) {
    if t == &eq.left {
        out.push(eq.right.clone());
    }
    if let Term::App(k, args) = t {
        for (i, arg) in args.iter().enumerate() {
            let mut subresults = Vec::new();
            collect_replacements(arg, eq, &mut subresults);
            for replaced in subresults {
                let mut new_args = args.clone();
                new_args[i] = replaced;
                out.push(Term::App(*k, new_args));
            }
        }
    }
}

/// True iff `result` codes an equation `t ~ t'` where `t` is the term coded
/// by `t_code` and `t'` arises from it by replacing exactly one occurrence of
/// the left side of the equation coded by `e_code` with its right side.
pub fn is_replacement_instance(
    result: &Code,
    t_code: &Code,
    e_code: &Code,
    sig: &Signature,
) -> bool {
    let Ok(t) = decode_term(t_code, sig) else {
        return false;
    };
    let Ok(e) = decode_equation(e_code, sig) else {
        return false;
    };
    let (res_left, res_right) = unpair(result);
    if res_left != *t_code {
        return false;
    }
    let Ok(candidate) = decode_term(&res_right, sig) else {
        return false;
    };
    replacement_results(&t, &e).contains(&candidate)
}

/// Apply the substitution `x_i := subst[i]` (identity beyond the list) to the
/// equation coded by `e_code`, returning the code of the instance.
pub fn substitution_instance(e_code: &Code, subst: &[Code], sig: &Signature) -> Result<Code> {
    let e = decode_equation(e_code, sig)?;
    let mapping = subst
        .iter()
        .map(|c| decode_term(c, sig))
        .collect::<Result<Vec<_>>>()?;
    Ok(encode_equation(&e.apply_substitution(&mapping)))
}

fn match_term(pattern: &Term, target: &Term, binding: &mut BTreeMap<usize, Term>) -> bool {
    match pattern {
        Term::Var(i) => match binding.get(i) {
            Some(bound) => bound == target,
            None => {
                binding.insert(*i, target.clone());
                true
            }
        },
        Term::App(k, args) => match target {
            Term::App(k2, args2) if k == k2 && args.len() == args2.len() => args
                .iter()
                .zip(args2)
                .all(|(p, t)| match_term(p, t, binding)),
            _ => false,
        },
    }
}

/// True iff the equation coded by `instance` is a simultaneous substitution
/// instance of the equation coded by `general`. Decided by syntactic
/// matching, so it is total on all code pairs.
pub fn equation_substitution_instance(instance: &Code, general: &Code, sig: &Signature) -> bool {
    let (Ok(inst), Ok(gen)) = (
        decode_equation(instance, sig),
        decode_equation(general, sig),
    ) else {
        return false;
    };
    let mut binding = BTreeMap::new();
    match_term(&gen.left, &inst.left, &mut binding)
        && match_term(&gen.right, &inst.right, &mut binding)
}

fn match_formula(
    pattern: &ModalFormula,
    target: &ModalFormula,
    binding: &mut BTreeMap<usize, ModalFormula>,
) -> bool {
    match pattern {
        ModalFormula::PropVar(i) => match binding.get(i) {
            Some(bound) => bound == target,
            None => {
                binding.insert(*i, target.clone());
                true
            }
        },
        ModalFormula::Bottom => matches!(target, ModalFormula::Bottom),
        ModalFormula::And(a, b) => match target {
            ModalFormula::And(a2, b2) => {
                match_formula(a, a2, binding) && match_formula(b, b2, binding)
            }
            _ => false,
        },
        ModalFormula::Implies(a, b) => match target {
            ModalFormula::Implies(a2, b2) => {
                match_formula(a, a2, binding) && match_formula(b, b2, binding)
            }
            _ => false,
        },
        ModalFormula::Box(slot, a) => match target {
            ModalFormula::Box(slot2, a2) if slot == slot2 => match_formula(a, a2, binding),
            _ => false,
        },
    }
}

/// Uniform-substitution matching for modal formulas: returns the witnessing
/// assignment of propositional variables when `instance` is an instance of
/// `pattern`.
pub fn formula_matches(
    pattern: &ModalFormula,
    instance: &ModalFormula,
) -> Option<BTreeMap<usize, ModalFormula>> {
    let mut binding = BTreeMap::new();
    if match_formula(pattern, instance, &mut binding) {
        Some(binding)
    } else {
        None
    }
}

/// True iff the formula coded by `instance` is a uniform substitution
/// instance of the formula coded by `general`.
pub fn formula_substitution_instance(instance: &Code, general: &Code) -> bool {
    let (Ok(inst), Ok(gen)) = (
        super::codes::decode_formula(instance),
        super::codes::decode_formula(general),
    ) else {
        return false;
    };
    formula_matches(&gen, &inst).is_some()
}
