//! Frame validity: a formula is valid on a frame when every valuation of its
//! variables makes it true at every point.
//!
//! Only the variables occurring in the formula are enumerated; any other
//! variable is irrelevant to the truth value, so the full valuation space
//! collapses to `(2^size)^occurring` assignments.

use super::{FiniteFrame, KripkeError};
use crate::codec::ModalFormula;
use std::collections::{BTreeMap, BTreeSet};

/// Decide validity. Points are packed into one machine word per set, so the
/// fast path covers carriers up to 64 points; larger frames fall back to the
/// reference evaluator.
pub fn validates(frame: &FiniteFrame, formula: &ModalFormula) -> Result<bool, KripkeError> {
    check_mode(frame, formula)?;
    let n = frame.size();
    if n > 64 {
        return validates_naive(frame, formula);
    }
    let full: u64 = if n == 64 { !0 } else { (1u64 << n) - 1 };
    let mut succ = vec![0u64; n];
    let mut pred = vec![0u64; n];
    for &(a, b) in frame.edges() {
        succ[a] |= 1 << b;
        pred[b] |= 1 << a;
    }
    let vars: Vec<usize> = formula.variables().into_iter().collect();
    let positions: BTreeMap<usize, usize> =
        vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut assignment = vec![0u64; vars.len()];
    loop {
        if eval_mask(formula, &succ, &pred, full, &positions, &assignment) != full {
            return Ok(false);
        }
        if !advance(&mut assignment, full) {
            return Ok(true);
        }
    }
}

fn check_mode(frame: &FiniteFrame, formula: &ModalFormula) -> Result<(), KripkeError> {
    if frame.accepts(formula) {
        Ok(())
    } else {
        Err(KripkeError::ModeMismatch(format!(
            "formula {formula} uses the converse box but the frame is {}",
            frame.mode()
        )))
    }
}

/// Odometer step over the valuation space; each entry ranges over all point
/// sets. Returns false once every assignment has been visited.
fn advance(assignment: &mut [u64], full: u64) -> bool {
    for slot in assignment.iter_mut() {
        if *slot == full {
            *slot = 0;
        } else {
            *slot += 1;
            return true;
        }
    }
    false
}

fn eval_mask(
    formula: &ModalFormula,
    succ: &[u64],
    pred: &[u64],
    full: u64,
    positions: &BTreeMap<usize, usize>,
    assignment: &[u64],
) -> u64 {
    match formula {
        ModalFormula::PropVar(v) => assignment[positions[v]],
        ModalFormula::Bottom => 0,
        ModalFormula::And(a, b) => {
            eval_mask(a, succ, pred, full, positions, assignment)
                & eval_mask(b, succ, pred, full, positions, assignment)
        }
        ModalFormula::Implies(a, b) => {
            let va = eval_mask(a, succ, pred, full, positions, assignment);
            let vb = eval_mask(b, succ, pred, full, positions, assignment);
            (!va & full) | vb
        }
        ModalFormula::Box(slot, body) => {
            let vb = eval_mask(body, succ, pred, full, positions, assignment);
            let reach = if *slot == 0 { succ } else { pred };
            let mut out = 0u64;
            for (x, &r) in reach.iter().enumerate() {
                if r & !vb == 0 {
                    out |= 1 << x;
                }
            }
            out
        }
    }
}

/// Reference evaluator: direct recursion over the satisfaction definition
/// with explicit point sets, no bit tricks. Kept public so conformance tests
/// and callers with oversized frames can use it.
pub fn validates_naive(frame: &FiniteFrame, formula: &ModalFormula) -> Result<bool, KripkeError> {
    check_mode(frame, formula)?;
    let vars: Vec<usize> = formula.variables().into_iter().collect();
    let mut valuation: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    all_valuations(frame, formula, &vars, 0, &mut valuation)
}

fn all_valuations(
    frame: &FiniteFrame,
    formula: &ModalFormula,
    vars: &[usize],
    index: usize,
    valuation: &mut BTreeMap<usize, BTreeSet<usize>>,
) -> Result<bool, KripkeError> {
    if index == vars.len() {
        for point in 0..frame.size() {
            if !satisfied_at(frame, formula, point, valuation) {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    for subset in subsets(frame.size()) {
        valuation.insert(vars[index], subset);
        if !all_valuations(frame, formula, vars, index + 1, valuation)? {
            valuation.remove(&vars[index]);
            return Ok(false);
        }
    }
    valuation.remove(&vars[index]);
    Ok(true)
}

fn subsets(n: usize) -> impl Iterator<Item = BTreeSet<usize>> {
    (0u64..1 << n).map(move |mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
}

fn satisfied_at(
    frame: &FiniteFrame,
    formula: &ModalFormula,
    point: usize,
    valuation: &BTreeMap<usize, BTreeSet<usize>>,
) -> bool {
    match formula {
        ModalFormula::PropVar(v) => valuation[v].contains(&point),
        ModalFormula::Bottom => false,
        ModalFormula::And(a, b) => {
            satisfied_at(frame, a, point, valuation) && satisfied_at(frame, b, point, valuation)
        }
        ModalFormula::Implies(a, b) => {
            !satisfied_at(frame, a, point, valuation) || satisfied_at(frame, b, point, valuation)
        }
        ModalFormula::Box(slot, body) => frame.edges().iter().all(|&(a, b)| {
            let (src, dst) = if *slot == 0 { (a, b) } else { (b, a) };
            src != point || satisfied_at(frame, body, dst, valuation)
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::parse_formula;
    use crate::kripke::{enumerate_frames, Mode};

    fn frame(size: usize, edges: &[(usize, usize)], mode: Mode) -> FiniteFrame {
        FiniteFrame::new(size, edges.iter().copied(), mode).unwrap()
    }

    #[test]
    fn reflexivity_axiom_separates_the_one_point_frames() {
        let t = parse_formula("box0 p0 -> p0").unwrap();
        let reflexive = frame(1, &[(0, 0)], Mode::Unimodal);
        let irreflexive = frame(1, &[], Mode::Unimodal);
        assert!(validates(&reflexive, &t).unwrap());
        assert!(!validates(&irreflexive, &t).unwrap());
    }

    #[test]
    fn box_is_vacuously_true_without_successors() {
        let f = parse_formula("box0 bot").unwrap();
        assert!(validates(&frame(1, &[], Mode::Unimodal), &f).unwrap());
        assert!(!validates(&frame(1, &[(0, 0)], Mode::Unimodal), &f).unwrap());
    }

    #[test]
    fn distribution_axiom_is_valid_on_small_frames() {
        let k = parse_formula("box0 (p0 -> p1) -> box0 p0 -> box0 p1").unwrap();
        for fr in enumerate_frames(2, Mode::Unimodal).unwrap() {
            assert!(validates(&fr, &k).unwrap(), "failed on {fr}");
        }
    }

    #[test]
    fn duality_axioms_are_valid_on_small_tense_frames() {
        let fwd = parse_formula("p0 -> box0 ((box1 (p0 -> bot)) -> bot)").unwrap();
        let bwd = parse_formula("p0 -> box1 ((box0 (p0 -> bot)) -> bot)").unwrap();
        for fr in enumerate_frames(2, Mode::Tense).unwrap() {
            assert!(validates(&fr, &fwd).unwrap(), "forward failed on {fr}");
            assert!(validates(&fr, &bwd).unwrap(), "backward failed on {fr}");
        }
    }

    #[test]
    fn converse_box_needs_tense_mode() {
        let f = parse_formula("box1 p0").unwrap();
        let uni = frame(2, &[(0, 1)], Mode::Unimodal);
        assert!(matches!(
            validates(&uni, &f),
            Err(KripkeError::ModeMismatch(_))
        ));
        // On the converse relation 0 has no predecessor and 1 has one.
        let tense = uni.with_mode(Mode::Tense);
        assert!(!validates(&tense, &f).unwrap());
        assert!(validates(&tense, &parse_formula("box1 (p0 -> p0)").unwrap()).unwrap());
    }

    #[test]
    fn fast_and_naive_evaluators_agree_on_two_point_frames() {
        let formulas = [
            "p0",
            "box0 p0 -> p0",
            "box0 (p0 -> p1) -> box0 p0 -> box0 p1",
            "p0 & p1 -> p0",
            "box0 box0 p0 -> box0 p0",
            "(p0 -> bot) -> bot",
        ];
        for mask in 0u32..16 {
            let edges: Vec<(usize, usize)> = (0..4)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| (i / 2, i % 2))
                .collect();
            let fr = frame(2, &edges, Mode::Unimodal);
            for text in formulas {
                let f = parse_formula(text).unwrap();
                assert_eq!(
                    validates(&fr, &f).unwrap(),
                    validates_naive(&fr, &f).unwrap(),
                    "disagreement on {fr} for {text}"
                );
            }
        }
    }
}
