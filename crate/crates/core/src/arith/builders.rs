//! Constructors for the three bounded-evaluation formulas.
//!
//! Each builder assembles a prenex formula over one free set-variable and
//! pins the clause list in a fixed order, so falsification witnesses are
//! reproducible across runs.

use super::formula::{Arg, ArithFormula, Atom, BoolExpr, Clause, EvalPlan, Quantifier, SetRef};
use super::Real;
use crate::codec::{encode_formula, ModalFormula, Signature};
use crate::hilbert::{distribution_schema, duality_schema, TabTable};
use crate::kripke::Mode;

fn v(i: usize) -> Arg {
    Arg::Var(i)
}

fn atom(a: Atom) -> BoolExpr {
    BoolExpr::Atom(a)
}

fn in_set(set: SetRef, arg: Arg) -> BoolExpr {
    atom(Atom::InReal { set, arg })
}

// Single-element conjunctions and disjunctions collapse to the element so
// clause dumps stay readable.
fn and(mut items: Vec<BoolExpr>) -> BoolExpr {
    if items.len() == 1 {
        items.pop().expect("nonempty")
    } else {
        BoolExpr::And(items)
    }
}

fn or(mut items: Vec<BoolExpr>) -> BoolExpr {
    if items.len() == 1 {
        items.pop().expect("nonempty")
    } else {
        BoolExpr::Or(items)
    }
}

/// Builds the condition that the free set-variable `Phi` is an equational
/// theory squeezed between the parameters `Phi0` and `Phi1`.
///
/// The matrix says: members of `Phi` are equations over `sig`, `Phi`
/// contains every reflexivity equation and is closed under symmetry,
/// transitivity, replacement, and substitution, and `Phi0 <= Phi <= Phi1`
/// as sets. The prefix is three universal quantifiers, so the formula
/// classifies as Pi with one block.
pub fn build_interval_formula(sig: &Signature, phi0: Real, phi1: Real) -> ArithFormula {
    let phi = SetRef::Free(0);
    let is_eq = |arg: Arg| {
        atom(Atom::IsEq {
            sig: sig.clone(),
            arg,
        })
    };
    let flip = |result: Arg, source: Arg| {
        atom(Atom::FlipEq {
            sig: sig.clone(),
            result,
            source,
        })
    };
    let clauses = vec![
        Clause::new(
            "members-are-equations",
            BoolExpr::implies(in_set(phi, v(0)), is_eq(v(0))),
        ),
        Clause::new(
            "reflexive",
            BoolExpr::implies(flip(v(0), v(0)), in_set(phi, v(0))),
        ),
        Clause::new(
            "symmetric",
            BoolExpr::implies(
                and(vec![in_set(phi, v(1)), flip(v(0), v(1))]),
                in_set(phi, v(0)),
            ),
        ),
        Clause::new(
            "transitive",
            BoolExpr::implies(
                and(vec![
                    in_set(phi, v(1)),
                    in_set(phi, v(2)),
                    atom(Atom::ChainEq {
                        sig: sig.clone(),
                        result: v(0),
                        first: v(1),
                        second: v(2),
                    }),
                ]),
                in_set(phi, v(0)),
            ),
        ),
        Clause::new(
            "replacement-closed",
            BoolExpr::implies(
                and(vec![
                    atom(Atom::IsTerm {
                        sig: sig.clone(),
                        arg: v(1),
                    }),
                    in_set(phi, v(2)),
                    atom(Atom::Rep {
                        sig: sig.clone(),
                        result: v(0),
                        term: v(1),
                        source: v(2),
                    }),
                ]),
                in_set(phi, v(0)),
            ),
        ),
        Clause::new(
            "substitution-closed",
            BoolExpr::implies(
                and(vec![
                    in_set(phi, v(1)),
                    atom(Atom::SubstInst {
                        sig: sig.clone(),
                        result: v(0),
                        source: v(1),
                    }),
                ]),
                in_set(phi, v(0)),
            ),
        ),
        Clause::new(
            "between-bounds",
            and(vec![
                BoolExpr::implies(in_set(SetRef::Param(0), v(0)), in_set(phi, v(0))),
                BoolExpr::implies(in_set(phi, v(0)), in_set(SetRef::Param(1), v(0))),
            ]),
        ),
    ];
    ArithFormula::assemble(
        vec![Quantifier::ForAll; 3],
        clauses,
        vec![("Phi0".to_string(), phi0), ("Phi1".to_string(), phi1)],
        vec!["Phi".to_string()],
    )
}

/// Clauses stating that `candidate` is a normal modal logic for `mode`
/// extending the set `base`: members are formulas of the mode, tautologies
/// and the distribution axioms (plus both duality axioms in tense mode)
/// are in, and the set is closed under modus ponens, necessitation, and
/// substitution.
fn normal_logic_clauses(mode: Mode, candidate: SetRef, base: SetRef) -> Vec<Clause> {
    let slots: Vec<u8> = match mode {
        Mode::Unimodal => vec![0],
        Mode::Tense => vec![0, 1],
    };
    let mut axiom_constants: Vec<BoolExpr> = slots
        .iter()
        .map(|&s| in_set(candidate, Arg::Const(encode_formula(&distribution_schema(s)))))
        .collect();
    if mode == Mode::Tense {
        axiom_constants.extend(
            slots
                .iter()
                .map(|&s| in_set(candidate, Arg::Const(encode_formula(&duality_schema(s))))),
        );
    }
    vec![
        Clause::new(
            "members-are-formulas",
            BoolExpr::implies(in_set(candidate, v(0)), atom(Atom::IsFml { mode, arg: v(0) })),
        ),
        Clause::new(
            "contains-tautologies",
            BoolExpr::implies(atom(Atom::TautologyCode { arg: v(0) }), in_set(candidate, v(0))),
        ),
        Clause::new("contains-modal-axioms", and(axiom_constants)),
        Clause::with_plan(
            "modus-ponens-closed",
            BoolExpr::implies(
                and(vec![
                    in_set(candidate, v(1)),
                    in_set(candidate, v(2)),
                    atom(Atom::MpShape {
                        result: v(0),
                        minor: v(1),
                        major: v(2),
                    }),
                ]),
                in_set(candidate, v(0)),
            ),
            EvalPlan::MpClosure {
                set: candidate,
                result: 0,
                minor: 1,
                major: 2,
            },
        ),
        Clause::with_plan(
            "necessitation-closed",
            BoolExpr::implies(
                and(vec![
                    in_set(candidate, v(1)),
                    or(slots
                        .iter()
                        .map(|&s| {
                            atom(Atom::NecShape {
                                slot: s,
                                result: v(0),
                                premise: v(1),
                            })
                        })
                        .collect()),
                ]),
                in_set(candidate, v(0)),
            ),
            EvalPlan::NecClosure {
                set: candidate,
                result: 0,
                premise: 1,
                slots,
            },
        ),
        Clause::with_plan(
            "substitution-closed",
            BoolExpr::implies(
                and(vec![
                    in_set(candidate, v(1)),
                    atom(Atom::FmlSubstInst {
                        result: v(0),
                        source: v(1),
                    }),
                ]),
                in_set(candidate, v(0)),
            ),
            EvalPlan::SubstClosure {
                set: candidate,
                result: 0,
                source: 1,
            },
        ),
        Clause::new(
            "extends-base",
            BoolExpr::implies(in_set(base, v(0)), in_set(candidate, v(0))),
        ),
    ]
}

/// Builds the condition that the free set-variable `Lprime` is a normal
/// logic extending the parameter `L0` whose finite frames are exactly the
/// finite frames of the parameter `L`.
///
/// The frame-agreement clause quantifies one frame code and, per frame,
/// states the biconditional "the frame validates all of `Lprime` iff it
/// validates all of `L`" with two universal member variables and two
/// existential counterexample variables. The prefix is three universals
/// followed by two existentials, so the formula classifies as Pi with two
/// blocks.
pub fn build_fmp_formula(mode: Mode, l0: Real, l: Real) -> ArithFormula {
    let candidate = SetRef::Free(0);
    let mut clauses = normal_logic_clauses(mode, candidate, SetRef::Param(0));
    let val = |frame: Arg, formula: Arg| atom(Atom::Val { mode, frame, formula });
    let a = |x: Arg| BoolExpr::implies(in_set(candidate, x.clone()), val(v(0), x));
    let b = |x: Arg| BoolExpr::implies(in_set(SetRef::Param(1), x.clone()), val(v(0), x));
    let body = or(vec![
        BoolExpr::not(atom(Atom::IsFrame { arg: v(0) })),
        and(vec![a(v(1)), b(v(2))]),
        and(vec![BoolExpr::not(a(v(3))), BoolExpr::not(b(v(4)))]),
    ]);
    clauses.push(Clause::with_plan(
        "frame-class-agreement",
        body,
        EvalPlan::FrameBicond {
            mode,
            lprime: candidate,
            l: SetRef::Param(1),
            frame: 0,
            pvar: 1,
            qvar: 2,
        },
    ));
    ArithFormula::assemble(
        vec![
            Quantifier::ForAll,
            Quantifier::ForAll,
            Quantifier::ForAll,
            Quantifier::Exists,
            Quantifier::Exists,
        ],
        clauses,
        vec![("L0".to_string(), l0), ("L".to_string(), l)],
        vec!["Lprime".to_string()],
    )
}

/// Builds the condition that the free set-variable `Lprime` is a normal
/// tense logic extending the parameter `L` such that every tense formula
/// is a member, or proves one of the listed tabular axioms over the
/// extended logic, or proves falsum over it.
///
/// The proof variables are existential, so the formula classifies as Pi
/// with two blocks. The falsum goal appears as a constant code inside the
/// final clause.
pub fn build_pretab_formula(l: Real, tabs: &TabTable) -> ArithFormula {
    let mode = Mode::Tense;
    let candidate = SetRef::Free(0);
    let mut clauses = normal_logic_clauses(mode, candidate, SetRef::Param(0));
    let bottom = encode_formula(&ModalFormula::Bottom);
    let proof_of = |goal: Arg| {
        atom(Atom::Proof {
            base: candidate,
            mode,
            extra: v(0),
            proof: v(3),
            goal,
        })
    };
    let body = or(vec![
        BoolExpr::not(atom(Atom::IsFml { mode, arg: v(0) })),
        in_set(candidate, v(0)),
        and(vec![
            atom(Atom::TabCode {
                table: tabs.clone(),
                index: v(4),
                result: v(5),
            }),
            proof_of(v(5)),
        ]),
        proof_of(Arg::Const(bottom.clone())),
    ]);
    clauses.push(Clause::with_plan(
        "tabular-or-inconsistent",
        body,
        EvalPlan::PretabDisjunction {
            mode,
            lprime: candidate,
            tabs: tabs.clone(),
            bottom,
            fvar: 0,
        },
    ));
    ArithFormula::assemble(
        vec![
            Quantifier::ForAll,
            Quantifier::ForAll,
            Quantifier::ForAll,
            Quantifier::Exists,
            Quantifier::Exists,
            Quantifier::Exists,
        ],
        clauses,
        vec![("L".to_string(), l)],
        vec!["Lprime".to_string()],
    )
}
