//! Shared proptest strategies for the integration suites.

#![allow(dead_code)]

use logikon::codec::{Equation, ModalFormula, Term};
use logikon::kripke::{FiniteFrame, Mode};
use proptest::prelude::*;

/// Terms over one binary symbol f0 and variables x0..x(max_vars-1).
pub fn binary_term(max_vars: usize, depth: u32) -> impl Strategy<Value = Term> {
    let leaf = (0..max_vars).prop_map(Term::Var);
    leaf.prop_recursive(depth, 12, 2, |inner| {
        (inner.clone(), inner).prop_map(|(a, b)| Term::App(0, vec![a, b]))
    })
}

pub fn binary_equation(max_vars: usize, depth: u32) -> impl Strategy<Value = Equation> {
    (binary_term(max_vars, depth), binary_term(max_vars, depth))
        .prop_map(|(l, r)| Equation::new(l, r))
}

/// Formulas with boxes drawn from `slots` slots; `slots = 1` keeps the
/// result unimodal.
pub fn formula(slots: u8, max_vars: usize, depth: u32) -> impl Strategy<Value = ModalFormula> {
    let leaf = prop_oneof![
        3 => (0..max_vars).prop_map(ModalFormula::PropVar),
        1 => Just(ModalFormula::Bottom),
    ];
    leaf.prop_recursive(depth, 16, 2, move |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ModalFormula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ModalFormula::implies(a, b)),
            (0..slots, inner).prop_map(|(s, a)| ModalFormula::boxed(s, a)),
        ]
    })
}

/// Propositional formulas only: no boxes.
pub fn propositional(max_vars: usize, depth: u32) -> impl Strategy<Value = ModalFormula> {
    let leaf = prop_oneof![
        3 => (0..max_vars).prop_map(ModalFormula::PropVar),
        1 => Just(ModalFormula::Bottom),
    ];
    leaf.prop_recursive(depth, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ModalFormula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| ModalFormula::implies(a, b)),
            inner.prop_map(ModalFormula::not),
        ]
    })
}

pub fn frame(mode: Mode, max_size: usize) -> impl Strategy<Value = FiniteFrame> {
    (1..=max_size).prop_flat_map(move |n| {
        proptest::collection::btree_set((0..n, 0..n), 0..=n * n)
            .prop_map(move |edges| FiniteFrame::new(n, edges, mode).expect("edges in range"))
    })
}
