//! End-to-end scenarios that cross module boundaries through the public
//! API only: text in, coded sets through the evaluator, verdicts out.

use logikon::arith::{
    build_fmp_formula, build_interval_formula, eval_bounded, eval_bounded_naive,
    replay_falsification, BoundedVerdict, Real, SigmaPi, TheoryApprox,
};
use logikon::codec::{encode_formula, parse_equation, parse_formula, parse_signature, Code};
use logikon::eqlogic::{AxiomSet, SaturationBudget};
use logikon::hilbert::{check_proof, search_proof, ProofBase, SearchOutcome};
use logikon::kripke::{
    finite_frames_of, fmp_equal_bounded, DistinguishedSide, FmpVerdict, LogicPresentation, Mode,
};

#[test]
fn commutative_closure_sits_inside_the_interval_condition() {
    let sig = parse_signature("2").unwrap();
    let comm = parse_equation("x0 * x1 = x1 * x0").unwrap();
    let axioms = AxiomSet::new(sig.clone(), vec![comm]).unwrap();
    let budget = SaturationBudget::new(4, 3, 64).unwrap();

    let formula = build_interval_formula(
        &sig,
        Real::empty(),
        Real::AllEquations(sig.clone()),
    );
    assert_eq!(formula.classify(), (SigmaPi::Pi, 1));

    let phi = Real::approx(TheoryApprox::equational_under(&axioms, budget));
    let report = eval_bounded(&formula, &[phi.clone()], 64).unwrap();
    assert_eq!(report.verdict, BoundedVerdict::ConsistentUpTo(64));
    assert_eq!(report.caveats.len(), 1);
    assert_eq!(report.caveats[0].parameter, "Phi");

    // the planned and the naive evaluator tell the same story clause by clause
    for i in 0..formula.clauses().len() {
        let clause = formula.conjunct(i).unwrap();
        let planned = eval_bounded(&clause, std::slice::from_ref(&phi), 24).unwrap();
        let naive = eval_bounded_naive(&clause, std::slice::from_ref(&phi), 24).unwrap();
        assert_eq!(planned.verdict, naive.verdict, "clause {i}");
    }
}

#[test]
fn reflexivity_axiom_splits_the_frame_classes_and_the_fmp_condition_sees_it() {
    let t_axiom = parse_formula("box0 p0 -> p0").unwrap();
    let base = LogicPresentation::minimal(Mode::Unimodal);
    let with_t = LogicPresentation::new(Mode::Unimodal, vec![t_axiom]).unwrap();

    // the frame comparison finds the one-point irreflexive witness
    let verdict = fmp_equal_bounded(&base, &with_t, 1).unwrap();
    match verdict {
        FmpVerdict::Distinguished { frame, side } => {
            assert_eq!(frame.size(), 1);
            assert!(frame.edges().is_empty());
            assert_eq!(side, DistinguishedSide::Left);
        }
        other => panic!("expected a distinguishing frame, got {other:?}"),
    }
    for frame in finite_frames_of(&with_t, 2).unwrap() {
        for point in 0..frame.size() {
            assert!(frame.edges().contains(&(point, point)));
        }
    }

    // the frame-class clause of the fmp condition reports the same split
    let formula = build_fmp_formula(
        Mode::Unimodal,
        Real::approx(TheoryApprox::modal_under(&base, 3)),
        Real::approx(TheoryApprox::modal_under(&base, 3)),
    );
    assert_eq!(formula.classify(), (SigmaPi::Pi, 2));
    // the smallest instance of the reflexivity schema carries code 1766, so
    // the disagreement only becomes visible at that bound
    let frame_clause = formula.conjunct(7).unwrap();
    let lprime = Real::approx(TheoryApprox::modal_under(&with_t, 3));
    let report = eval_bounded(&frame_clause, &[lprime.clone()], 1766).unwrap();
    let BoundedVerdict::Falsified(witness) = report.verdict else {
        panic!("the reflexivity extension should break frame-class agreement");
    };
    let expected: Vec<_> = [0u64, 1766, 0].map(Code::from).into();
    assert_eq!(witness, expected);
    assert!(replay_falsification(&frame_clause, &[lprime], &witness, 1766).unwrap());
}

#[test]
fn searched_proofs_survive_an_oracle_recheck() {
    let logic = LogicPresentation::minimal(Mode::Unimodal);
    let goal = parse_formula("box0 box0 (p0 -> p0)").unwrap();
    let code = encode_formula(&goal);
    let SearchOutcome::Found(proof) = search_proof(&logic, None, &code, 4, goal.size() + 4)
    else {
        panic!("nested necessitation should be provable in 3 lines");
    };
    assert!(proof.len() <= 4);
    assert_eq!(
        check_proof(&ProofBase::Axiomatic(&logic), None, &proof, &code),
        Ok(true)
    );

    // the same membership question, asked through the under-approximation
    let real = Real::approx(TheoryApprox::modal_under(&logic, 4));
    assert!(real.contains(&code));
    assert!(!real.contains(&encode_formula(&parse_formula("bot").unwrap())));
}
