//! Acceptance gate. One test per criterion; each prints a single pass or
//! fail line and enforces its pinned wall-clock budget where one applies.
//! Corpora are seeded, so every run checks the same inputs.

use logikon::arith::{
    build_fmp_formula, build_interval_formula, build_pretab_formula, eval_bounded, Arg, Atom,
    BoolExpr, BoundedVerdict, Real, SigmaPi, TheoryApprox,
};
use logikon::codec::{
    decode_equation, decode_formula, decode_term, encode_equation, encode_formula, encode_term,
    is_replacement_instance, is_term_code, parse_formula, Code, Equation, ModalFormula, Signature,
    Term,
};
use logikon::eqlogic::{
    derives, enumerate_algebras, holds_in, refutes, saturate, term_universe, AxiomSet,
    FiniteAlgebra, RefutationOutcome, SaturationBudget,
};
use logikon::hilbert::{
    check_proof, search_proof, Justification, ProofBase, ProofObject, SearchOutcome, TabTable,
};
use logikon::kripke::{
    enumerate_frames, fmp_equal_bounded, validates, validates_naive, DistinguishedSide, FmpVerdict,
    LogicPresentation, Mode,
};
use logikon::lattice::{
    check_distributive, downset_lattice, exists_incomparable_pair, DownsetLattice, FiniteChain,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

fn criterion(
    number: u32,
    title: &str,
    budget: Option<Duration>,
    body: impl FnOnce() -> Result<(), String>,
) {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    let overdue = budget.filter(|b| elapsed > *b);
    match (&outcome, overdue) {
        (Ok(()), None) => println!("[PASS] criterion {number:02}: {title} ({elapsed:.2?})"),
        (Ok(()), Some(b)) => {
            println!("[FAIL] criterion {number:02}: {title} (took {elapsed:.2?}, budget {b:?})");
            panic!("criterion {number} exceeded its time budget");
        }
        (Err(msg), _) => {
            println!("[FAIL] criterion {number:02}: {title}: {msg}");
            panic!("criterion {number} failed: {msg}");
        }
    }
}

fn fail(msg: impl Into<String>) -> Result<(), String> {
    Err(msg.into())
}

#[test]
fn criterion_01_term_codes_roundtrip_and_stay_distinct() {
    criterion(
        1,
        "term codes roundtrip and stay distinct",
        Some(Duration::from_secs(5)),
        || {
            let sig = Signature::binary_and_unary();
            let terms = term_universe(&sig, 7, 3);
            if terms.len() != 1875 {
                return fail(format!("expected 1875 terms, found {}", terms.len()));
            }
            let mut codes = BTreeSet::new();
            for t in &terms {
                let code = encode_term(t);
                if !is_term_code(&code, &sig) {
                    return fail(format!("code {code} of {t} rejected by the validator"));
                }
                match decode_term(&code, &sig) {
                    Ok(back) if back == *t => {}
                    Ok(back) => return fail(format!("{t} decoded as {back}")),
                    Err(e) => return fail(format!("{t} failed to decode: {e}")),
                }
                if !codes.insert(code.clone()) {
                    return fail(format!("code {code} assigned twice"));
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_02_replacement_relation_matches_an_occurrence_oracle() {
    criterion(
        2,
        "replacement relation matches an occurrence oracle",
        Some(Duration::from_secs(30)),
        || {
            let sig = Signature::binary_and_unary();
            let pool = term_universe(&sig, 4, 2);
            if pool.len() != 24 {
                return fail(format!("expected 24 terms of size <= 4, found {}", pool.len()));
            }
            fn rewrites(t: &Term, from: &Term, to: &Term, out: &mut BTreeSet<Term>) {
                if t == from {
                    out.insert(to.clone());
                }
                if let Term::App(k, args) = t {
                    for i in 0..args.len() {
                        let mut inner = BTreeSet::new();
                        rewrites(&args[i], from, to, &mut inner);
                        for replaced in inner {
                            let mut new_args = args.clone();
                            new_args[i] = replaced;
                            out.insert(Term::App(*k, new_args));
                        }
                    }
                }
            }
            let raw_probes: Vec<Code> = (0u64..20).map(Code::from).collect();
            for t in &pool {
                let t_code = encode_term(t);
                for left in &pool {
                    for right in &pool {
                        let source = Equation::new(left.clone(), right.clone());
                        let e_code = encode_equation(&source);
                        let mut results = BTreeSet::new();
                        rewrites(t, left, right, &mut results);
                        let mut probes: Vec<Code> = results
                            .iter()
                            .map(|r| encode_equation(&Equation::new(t.clone(), r.clone())))
                            .collect();
                        for p in &pool {
                            probes.push(encode_equation(&Equation::new(t.clone(), p.clone())));
                            probes.push(encode_equation(&Equation::new(p.clone(), t.clone())));
                        }
                        probes.extend(raw_probes.iter().cloned());
                        for probe in &probes {
                            let expected = match decode_equation(probe, &sig) {
                                Ok(eq) => eq.left == *t && results.contains(&eq.right),
                                Err(_) => false,
                            };
                            let got = is_replacement_instance(probe, &t_code, &e_code, &sig);
                            if got != expected {
                                return fail(format!(
                                    "candidate {probe} for term {t} under {source}: \
                                     relation says {got}, oracle says {expected}"
                                ));
                            }
                        }
                    }
                }
            }
            Ok(())
        },
    );
}

fn seeded_equational_corpus() -> Vec<(AxiomSet, Equation)> {
    let sig = Signature::one_binary();
    let pool = term_universe(&sig, 3, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let mut pick = move |pool: &[Term]| pool[rng.gen_range(0..pool.len())].clone();
    (0..20)
        .map(|i| {
            let count = 1 + (i % 2);
            let axioms: Vec<Equation> = (0..count)
                .map(|_| Equation::new(pick(&pool), pick(&pool)))
                .collect();
            let goal = Equation::new(pick(&pool), pick(&pool));
            let set = AxiomSet::new(sig.clone(), axioms).expect("pool terms fit the signature");
            (set, goal)
        })
        .collect()
}

fn algebras_up_to(sig: &Signature, max_size: usize) -> Vec<FiniteAlgebra> {
    (1..=max_size)
        .flat_map(|size| enumerate_algebras(sig, size).expect("within the ceiling"))
        .collect()
}

#[test]
fn criterion_03_saturated_consequences_hold_in_every_model() {
    criterion(
        3,
        "saturated consequences hold in every model of their axioms",
        Some(Duration::from_secs(120)),
        || {
            let sig = Signature::one_binary();
            let budget = SaturationBudget::new(4, 3, 64).expect("positive budget");
            let algebras = algebras_up_to(&sig, 3);
            for (set, _) in seeded_equational_corpus() {
                let closure = saturate(&set, budget);
                for algebra in &algebras {
                    let mut satisfies = true;
                    for axiom in set.axioms() {
                        if !holds_in(algebra, axiom).map_err(|e| e.to_string())? {
                            satisfies = false;
                            break;
                        }
                    }
                    if !satisfies {
                        continue;
                    }
                    for eq in closure.derived() {
                        if !holds_in(algebra, eq).map_err(|e| e.to_string())? {
                            return fail(format!(
                                "axioms {:?} derived {eq}, which fails in a model of size {}",
                                set.axioms(),
                                algebra.size()
                            ));
                        }
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_04_derivation_and_refutation_never_both_answer() {
    criterion(
        4,
        "derivation and refutation never both answer",
        None,
        || {
            let sig = Signature::one_binary();
            let budget = SaturationBudget::new(4, 3, 64).expect("positive budget");
            let assoc = Equation::new(
                Term::App(0, vec![Term::App(0, vec![Term::Var(0), Term::Var(1)]), Term::Var(2)]),
                Term::App(0, vec![Term::Var(0), Term::App(0, vec![Term::Var(1), Term::Var(2)])]),
            );
            let comm = Equation::new(
                Term::App(0, vec![Term::Var(0), Term::Var(1)]),
                Term::App(0, vec![Term::Var(1), Term::Var(0)]),
            );
            let mut pairs = seeded_equational_corpus();
            pairs.push((
                AxiomSet::new(sig.clone(), vec![assoc.clone()]).expect("conforms"),
                comm.clone(),
            ));
            for (set, goal) in &pairs {
                let derived = derives(set, goal, budget).is_derived();
                let refuted = matches!(
                    refutes(set, goal, 2).map_err(|e| e.to_string())?,
                    RefutationOutcome::CounterModel { .. }
                );
                if derived && refuted {
                    return fail(format!(
                        "goal {goal} both derived from and refuted against {:?}",
                        set.axioms()
                    ));
                }
            }
            let assoc_only = AxiomSet::new(sig, vec![assoc]).expect("conforms");
            match refutes(&assoc_only, &comm, 2).map_err(|e| e.to_string())? {
                RefutationOutcome::CounterModel { algebra, .. } => {
                    if algebra.table(0) != [0, 0, 1, 1] {
                        return fail(format!(
                            "expected the left-projection table, got {:?}",
                            algebra.table(0)
                        ));
                    }
                }
                RefutationOutcome::Unknown => {
                    return fail("no counter-model for commutativity from associativity")
                }
            }
            Ok(())
        },
    );
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for shorter in permutations(n - 1) {
        for slot in 0..=shorter.len() {
            let mut perm = shorter.clone();
            perm.insert(slot, n - 1);
            out.push(perm);
        }
    }
    out
}

fn burnside_digraph_classes(n: usize) -> u64 {
    let perms = permutations(n);
    let mut total = 0u64;
    for perm in &perms {
        let mut seen = vec![false; n * n];
        let mut orbits = 0u32;
        for start in 0..n * n {
            if seen[start] {
                continue;
            }
            orbits += 1;
            let mut cell = start;
            while !seen[cell] {
                seen[cell] = true;
                cell = perm[cell / n] * n + perm[cell % n];
            }
        }
        total += 1u64 << orbits;
    }
    total / perms.len() as u64
}

#[test]
fn criterion_05_frame_class_counts_match_a_burnside_census() {
    criterion(
        5,
        "frame class counts match a Burnside census",
        Some(Duration::from_secs(10)),
        || {
            let frames = enumerate_frames(3, Mode::Unimodal).map_err(|e| e.to_string())?;
            let mut codes = BTreeSet::new();
            for frame in &frames {
                if !codes.insert(logikon::codec::canonical_frame_code(frame)) {
                    return fail("two enumerated frames share a canonical code".to_string());
                }
            }
            for (size, expected) in [(1usize, 2u64), (2, 10), (3, 104)] {
                let listed = frames.iter().filter(|f| f.size() == size).count() as u64;
                if listed != expected {
                    return fail(format!("size {size}: listed {listed}, expected {expected}"));
                }
                let census = burnside_digraph_classes(size);
                if census != expected {
                    return fail(format!("size {size}: census {census}, expected {expected}"));
                }
            }
            Ok(())
        },
    );
}

fn sample_formula(rng: &mut ChaCha8Rng, depth: usize) -> ModalFormula {
    if depth == 0 {
        return match rng.gen_range(0..4) {
            3 => ModalFormula::Bottom,
            i => ModalFormula::p(i),
        };
    }
    match rng.gen_range(0..9) {
        0 => ModalFormula::p(rng.gen_range(0..3)),
        1 => ModalFormula::Bottom,
        2..=4 => ModalFormula::and(
            sample_formula(rng, depth - 1),
            sample_formula(rng, depth - 1),
        ),
        5..=7 => ModalFormula::implies(
            sample_formula(rng, depth - 1),
            sample_formula(rng, depth - 1),
        ),
        _ => ModalFormula::boxed(0, sample_formula(rng, depth - 1)),
    }
}

fn k_axiom(slot: u8) -> ModalFormula {
    let body = ModalFormula::implies(ModalFormula::p(0), ModalFormula::p(1));
    ModalFormula::implies(
        ModalFormula::boxed(slot, body),
        ModalFormula::implies(
            ModalFormula::boxed(slot, ModalFormula::p(0)),
            ModalFormula::boxed(slot, ModalFormula::p(1)),
        ),
    )
}

fn duality_axiom(slot: u8) -> ModalFormula {
    let other = 1 - slot;
    let diamond = ModalFormula::not(ModalFormula::boxed(
        other,
        ModalFormula::not(ModalFormula::p(0)),
    ));
    ModalFormula::implies(ModalFormula::p(0), ModalFormula::boxed(slot, diamond))
}

#[test]
fn criterion_06_fast_validity_agrees_with_the_naive_check() {
    criterion(
        6,
        "fast validity agrees with the naive check and the base schemas are valid",
        Some(Duration::from_secs(60)),
        || {
            let frames = enumerate_frames(3, Mode::Unimodal).map_err(|e| e.to_string())?;
            if frames.len() != 116 {
                return fail(format!("expected 116 frames, found {}", frames.len()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(6);
            let corpus: Vec<ModalFormula> =
                (0..100).map(|_| sample_formula(&mut rng, 3)).collect();
            for formula in &corpus {
                for frame in &frames {
                    let fast = validates(frame, formula).map_err(|e| e.to_string())?;
                    let naive = validates_naive(frame, formula).map_err(|e| e.to_string())?;
                    if fast != naive {
                        return fail(format!(
                            "{formula} on frame code {}: fast {fast}, naive {naive}",
                            logikon::codec::encode_frame(frame)
                        ));
                    }
                }
            }
            for frame in &frames {
                let tense = frame.with_mode(Mode::Tense);
                for slot in [0u8, 1] {
                    if !validates(&tense, &k_axiom(slot)).map_err(|e| e.to_string())? {
                        return fail(format!("distribution schema {slot} fails somewhere"));
                    }
                    if !validates(&tense, &duality_axiom(slot)).map_err(|e| e.to_string())? {
                        return fail(format!("duality schema {slot} fails somewhere"));
                    }
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_07_frame_comparison_splits_on_reflexivity() {
    criterion(
        7,
        "frame comparison splits on reflexivity and matches equal logics",
        None,
        || {
            let base = LogicPresentation::minimal(Mode::Unimodal);
            let reflexive = LogicPresentation::new(
                Mode::Unimodal,
                vec![ModalFormula::implies(
                    ModalFormula::boxed(0, ModalFormula::p(0)),
                    ModalFormula::p(0),
                )],
            )
            .map_err(|e| e.to_string())?;
            match fmp_equal_bounded(&base, &reflexive, 1).map_err(|e| e.to_string())? {
                FmpVerdict::Distinguished { frame, side } => {
                    if frame.size() != 1 || !frame.edges().is_empty() {
                        return fail(format!(
                            "expected the irreflexive point, got size {} with {} edges",
                            frame.size(),
                            frame.edges().len()
                        ));
                    }
                    if side != DistinguishedSide::Left {
                        return fail("the irreflexive point should satisfy only the weaker side");
                    }
                }
                FmpVerdict::EqualUpTo(b) => {
                    return fail(format!("reflexivity invisible up to size {b}"))
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..10 {
                let axioms: Vec<ModalFormula> = (0..rng.gen_range(0..=2))
                    .map(|_| sample_formula(&mut rng, 2))
                    .collect();
                let logic =
                    LogicPresentation::new(Mode::Unimodal, axioms).map_err(|e| e.to_string())?;
                let verdict = fmp_equal_bounded(&logic, &logic, 3).map_err(|e| e.to_string())?;
                if verdict != FmpVerdict::EqualUpTo(3) {
                    return fail(format!("a logic differs from itself: {verdict:?}"));
                }
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_08_interval_condition_verdicts_and_classification() {
    criterion(
        8,
        "interval condition verdicts and classification",
        None,
        || {
            let sig = Signature::one_binary();
            let formula = build_interval_formula(
                &sig,
                Real::empty(),
                Real::AllEquations(sig.clone()),
            );
            if formula.classify() != (SigmaPi::Pi, 1) {
                return fail(format!("classified as {:?}", formula.classify()));
            }
            let comm = Equation::new(
                Term::App(0, vec![Term::Var(0), Term::Var(1)]),
                Term::App(0, vec![Term::Var(1), Term::Var(0)]),
            );
            let axioms = AxiomSet::new(sig.clone(), vec![comm]).expect("conforms");
            let budget = SaturationBudget::new(4, 3, 64).expect("positive budget");
            let closure = Real::approx(TheoryApprox::equational_under(&axioms, budget));
            let report =
                eval_bounded(&formula, &[closure], 64).map_err(|e| e.to_string())?;
            match report.verdict {
                BoundedVerdict::ConsistentUpTo(64) => {}
                other => return fail(format!("closure verdict {other:?}")),
            }
            if report.caveats.is_empty() {
                return fail("an approximate oracle should be reported as a caveat");
            }
            let report =
                eval_bounded(&formula, &[Real::empty()], 8).map_err(|e| e.to_string())?;
            match report.verdict {
                BoundedVerdict::Falsified(witness) => {
                    if witness.first() != Some(&Code::from(0u64)) {
                        return fail(format!("witness {witness:?}"));
                    }
                    let eq = decode_equation(&witness[0], &sig).map_err(|e| e.to_string())?;
                    if eq != Equation::new(Term::Var(0), Term::Var(0)) {
                        return fail(format!("witness decodes to {eq}"));
                    }
                }
                other => return fail(format!("empty-set verdict {other:?}")),
            }
            Ok(())
        },
    );
}

fn constant_proof_goals(expr: &BoolExpr, out: &mut Vec<Code>) {
    match expr {
        BoolExpr::Atom(Atom::Proof {
            goal: Arg::Const(code),
            ..
        }) => out.push(code.clone()),
        BoolExpr::Atom(_) => {}
        BoolExpr::Not(inner) => constant_proof_goals(inner, out),
        BoolExpr::And(items) | BoolExpr::Or(items) => {
            for item in items {
                constant_proof_goals(item, out);
            }
        }
        BoolExpr::Implies(premise, conclusion) => {
            constant_proof_goals(premise, out);
            constant_proof_goals(conclusion, out);
        }
    }
}

#[test]
fn criterion_09_condition_formulas_classify_as_two_block_pi() {
    criterion(
        9,
        "frame and tabularity conditions classify as two-block Pi with a falsum constant",
        None,
        || {
            let minimal_tense = LogicPresentation::minimal(Mode::Tense);
            let fmp_variants = [
                build_fmp_formula(
                    Mode::Unimodal,
                    Real::empty(),
                    Real::AllFormulas(Mode::Unimodal),
                ),
                build_fmp_formula(
                    Mode::Tense,
                    Real::approx(TheoryApprox::modal_under(&minimal_tense, 2)),
                    Real::finite([Code::from(6u64)]),
                ),
            ];
            for formula in &fmp_variants {
                if formula.classify() != (SigmaPi::Pi, 2) {
                    return fail(format!("fmp condition classified {:?}", formula.classify()));
                }
            }
            let tabs = TabTable::parse("0 p0 -> p0").map_err(|e| e.to_string())?;
            let pretab_variants = [
                build_pretab_formula(Real::empty(), &tabs),
                build_pretab_formula(Real::AllFormulas(Mode::Tense), &tabs),
            ];
            for formula in &pretab_variants {
                if formula.classify() != (SigmaPi::Pi, 2) {
                    return fail(format!(
                        "tabularity condition classified {:?}",
                        formula.classify()
                    ));
                }
                let mut constants = Vec::new();
                for clause in formula.clauses() {
                    constant_proof_goals(clause.body(), &mut constants);
                }
                if constants.is_empty() {
                    return fail("no constant proof goal found");
                }
                for code in &constants {
                    if *code != Code::from(1u64) {
                        return fail(format!("constant proof goal {code}"));
                    }
                    match decode_formula(code) {
                        Ok(ModalFormula::Bottom) => {}
                        other => return fail(format!("constant decodes to {other:?}")),
                    }
                }
            }
            Ok(())
        },
    );
}

fn skeleton_atoms(f: &ModalFormula, out: &mut BTreeSet<ModalFormula>) {
    match f {
        ModalFormula::PropVar(_) | ModalFormula::Box(_, _) => {
            out.insert(f.clone());
        }
        ModalFormula::Bottom => {}
        ModalFormula::And(a, b) | ModalFormula::Implies(a, b) => {
            skeleton_atoms(a, out);
            skeleton_atoms(b, out);
        }
    }
}

fn skeleton_eval(f: &ModalFormula, atoms: &[ModalFormula], truth: u32) -> bool {
    match f {
        ModalFormula::Bottom => false,
        ModalFormula::PropVar(_) | ModalFormula::Box(_, _) => {
            let index = atoms.iter().position(|a| a == f).expect("collected");
            truth >> index & 1 == 1
        }
        ModalFormula::And(a, b) => {
            skeleton_eval(a, atoms, truth) && skeleton_eval(b, atoms, truth)
        }
        ModalFormula::Implies(a, b) => {
            !skeleton_eval(a, atoms, truth) || skeleton_eval(b, atoms, truth)
        }
    }
}

fn independent_tautology(f: &ModalFormula) -> bool {
    let mut atoms = BTreeSet::new();
    skeleton_atoms(f, &mut atoms);
    let atoms: Vec<ModalFormula> = atoms.into_iter().collect();
    assert!(atoms.len() < 20, "skeleton too wide for a truth table");
    (0..1u32 << atoms.len()).all(|truth| skeleton_eval(f, &atoms, truth))
}

fn distribution_shape(f: &ModalFormula) -> bool {
    let ModalFormula::Implies(premise, rest) = f else {
        return false;
    };
    let ModalFormula::Box(s1, body) = &**premise else {
        return false;
    };
    let ModalFormula::Implies(a, b) = &**body else {
        return false;
    };
    let ModalFormula::Implies(left, right) = &**rest else {
        return false;
    };
    let ModalFormula::Box(s2, fa) = &**left else {
        return false;
    };
    let ModalFormula::Box(s3, fb) = &**right else {
        return false;
    };
    *s1 == 0 && *s2 == 0 && *s3 == 0 && fa == a && fb == b
}

fn independently_verified(steps: &[(ModalFormula, Justification)], goal: &Code) -> bool {
    if steps.is_empty() {
        return false;
    }
    for (i, (formula, justification)) in steps.iter().enumerate() {
        let sound = match justification {
            Justification::Tautology => independent_tautology(formula),
            Justification::KInstance { slot } => *slot == 0 && distribution_shape(formula),
            Justification::Nec { premise, slot } => {
                *premise < i
                    && *slot == 0
                    && *formula == ModalFormula::boxed(0, steps[*premise].0.clone())
            }
            Justification::MP { major, minor } => {
                *major < i
                    && *minor < i
                    && steps[*major].0
                        == ModalFormula::implies(steps[*minor].0.clone(), formula.clone())
            }
            _ => false,
        };
        if !sound {
            return false;
        }
    }
    encode_formula(&steps[steps.len() - 1].0) == *goal
}

#[test]
fn criterion_10_proof_search_output_survives_checking_and_mutation() {
    criterion(
        10,
        "proof search output survives checking and mutation",
        None,
        || {
            let minimal = LogicPresentation::minimal(Mode::Unimodal);
            let base = ProofBase::Axiomatic(&minimal);
            let goals = [
                "p0 -> p0",
                "bot -> p0",
                "p0 -> (p1 -> p0)",
                "box0 (p0 -> p0)",
                "box0 box0 (p0 -> p0)",
                "box0 (p0 -> p1) -> (box0 p0 -> box0 p1)",
            ];
            for text in goals {
                let goal = parse_formula(text).map_err(|e| e.to_string())?;
                let code = encode_formula(&goal);
                let SearchOutcome::Found(proof) =
                    search_proof(&minimal, None, &code, 4, goal.size() + 4)
                else {
                    return fail(format!("no proof found for {text}"));
                };
                if check_proof(&base, None, &proof, &code) != Ok(true) {
                    return fail(format!("search output for {text} rejected"));
                }
            }

            let step_one = ModalFormula::implies(ModalFormula::p(0), ModalFormula::p(0));
            let conclusion = ModalFormula::boxed(0, step_one.clone());
            let goal = encode_formula(&conclusion);
            let pristine = vec![
                (step_one, Justification::Tautology),
                (conclusion, Justification::Nec { premise: 0, slot: 0 }),
            ];
            if check_proof(&base, None, &ProofObject::new(pristine.clone()), &goal) != Ok(true) {
                return fail("the unmutated two-step proof must be accepted");
            }
            let mut rng = ChaCha8Rng::seed_from_u64(10);
            let mut accepted = 0usize;
            for attempt in 0..100 {
                let mut steps = pristine.clone();
                match rng.gen_range(0..6) {
                    0 => {
                        let i = rng.gen_range(0..steps.len());
                        steps[i].0 = sample_formula(&mut rng, 2);
                    }
                    1 => {
                        let i = rng.gen_range(0..steps.len());
                        steps[i].1 = match rng.gen_range(0..4) {
                            0 => Justification::Tautology,
                            1 => Justification::KInstance { slot: 0 },
                            2 => Justification::Nec {
                                premise: rng.gen_range(0..3),
                                slot: 0,
                            },
                            _ => Justification::MP {
                                major: rng.gen_range(0..3),
                                minor: rng.gen_range(0..3),
                            },
                        };
                    }
                    2 => steps.swap(0, 1),
                    3 => {
                        let i = rng.gen_range(0..steps.len());
                        steps.remove(i);
                    }
                    4 => {
                        let from = rng.gen_range(0..steps.len());
                        let to = rng.gen_range(0..=steps.len());
                        let copy = steps[from].clone();
                        steps.insert(to, copy);
                    }
                    _ => {
                        if let Justification::Nec { premise, .. } = &mut steps[1].1 {
                            *premise = rng.gen_range(1..4);
                        }
                    }
                }
                let mutant = ProofObject::new(steps.clone());
                match check_proof(&base, None, &mutant, &goal) {
                    Ok(true) => {
                        if !independently_verified(&steps, &goal) {
                            return fail(format!(
                                "mutation {attempt} accepted but fails independent review: {steps:?}"
                            ));
                        }
                        accepted += 1;
                    }
                    Ok(false) | Err(_) => {}
                }
            }
            if accepted == 100 {
                return fail("every mutation was accepted; the mutator is broken");
            }

            let falsum = encode_formula(&ModalFormula::Bottom);
            let premise = encode_formula(&ModalFormula::p(0));
            let SearchOutcome::Found(proof) =
                search_proof(&minimal, Some(&premise), &falsum, 2, 4)
            else {
                return fail("no contradiction found from the added premise");
            };
            if proof.len() > 2 {
                return fail(format!("contradiction proof uses {} lines", proof.len()));
            }
            if check_proof(&base, Some(&premise), &proof, &falsum) != Ok(true) {
                return fail("the contradiction proof was rejected on recheck");
            }
            Ok(())
        },
    );
}

#[test]
fn criterion_11_chain_downsets_are_distributive_lattices() {
    criterion(
        11,
        "chain downsets form distributive lattices and the diamond does not",
        Some(Duration::from_secs(5)),
        || {
            for n in 1..=12usize {
                let chain = FiniteChain::new(n).map_err(|e| e.to_string())?;
                let lattice = downset_lattice(&chain);
                if lattice.len() != n + 1 {
                    return fail(format!("chain {n}: {} downsets", lattice.len()));
                }
                if let Some((a, b)) = exists_incomparable_pair(&lattice) {
                    return fail(format!("chain {n}: incomparable downsets {a} and {b}"));
                }
                if !check_distributive(&lattice).map_err(|e| e.to_string())? {
                    return fail(format!("chain {n}: distributivity fails"));
                }
            }
            let diamond = DownsetLattice::diamond_fixture();
            if exists_incomparable_pair(&diamond).is_none() {
                return fail("the diamond should contain incomparable elements");
            }
            if check_distributive(&diamond).map_err(|e| e.to_string())? {
                return fail("the diamond must not count as distributive");
            }
            Ok(())
        },
    );
}

const GOLDEN_CASES: &[(&str, &[&str])] = &[
    ("encode-term", &["encode", "--term", "f0(x0)"]),
    ("encode-equation", &["encode", "--equation", "x0 * x1 = x1 * x0"]),
    ("decode-formula", &["decode", "--formula", "1766"]),
    ("frames-size-2", &["frames", "--max-size", "2"]),
    ("ffr-reflexive", &["ffr", "t.fml", "--max-size", "2"]),
    (
        "saturate-comm",
        &["saturate", "comm.eq", "--max-term-size", "3", "--max-vars", "2", "--trace"],
    ),
    (
        "derive-comm-flip",
        &["derive", "comm.eq", "--goal", "x1 * x0 = x0 * x1"],
    ),
    (
        "refute-assoc-comm",
        &["refute", "assoc.eq", "--goal", "x0 * x1 = x1 * x0", "--max-algebra-size", "2"],
    ),
    ("fmp-distinguish", &["fmp-equal", "k.fml", "t.fml", "--max-size", "1"]),
    ("check-nec-proof", &["check-proof", "nec.proof"]),
    (
        "search-nec-proof",
        &["search-proof", "--goal", "box0 (p0 -> p0)", "--proof-bound", "3"],
    ),
    (
        "pretab-small",
        &["pretab", "--tabs", "tabs.txt", "--code-bound", "6", "--proof-bound", "2"],
    ),
    (
        "eval-interval-comm",
        &[
            "eval",
            "--formula",
            "interval",
            "--phi0",
            "empty",
            "--phi1",
            "all-equations",
            "--phi",
            "eq-under:file=comm.eq,max-iterations=64",
            "--bound",
            "64",
        ],
    ),
    (
        "eval-interval-empty",
        &[
            "eval",
            "--formula",
            "interval",
            "--phi0",
            "empty",
            "--phi1",
            "all-equations",
            "--phi",
            "empty",
            "--bound",
            "8",
        ],
    ),
    ("lattice-demo-5", &["lattice-demo", "--n", "5"]),
    (
        "conformance-seed7",
        &["conformance", "--seed", "7", "--count", "25", "--max-size", "3"],
    ),
    (
        "canonical-frame-json",
        &[
            "--format",
            "json",
            "encode",
            "--frame",
            "{size: 2, edges: [[0, 1], [1, 0]]}",
            "--canonical",
        ],
    ),
    (
        "validate-irreflexive",
        &["validate", "--frame", "{size: 1, edges: []}", "--formula", "box0 p0"],
    ),
];

fn run_cli(threads: &str, args: &[&str]) -> Result<Vec<u8>, String> {
    let fixtures = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");
    let output = Command::new(env!("CARGO_BIN_EXE_logikon"))
        .current_dir(fixtures)
        .arg("--threads")
        .arg(threads)
        .args(args)
        .output()
        .map_err(|e| format!("failed to launch the binary: {e}"))?;
    if !output.status.success() {
        return Err(format!(
            "{args:?} exited with {:?}: {}",
            output.status.code(),
            String::from_utf8_lossy(&output.stderr)
        ));
    }
    if !output.stderr.is_empty() {
        return Err(format!(
            "{args:?} wrote to stderr: {}",
            String::from_utf8_lossy(&output.stderr)
        ));
    }
    Ok(output.stdout)
}

#[test]
fn criterion_12_command_output_is_byte_stable_across_thread_counts() {
    criterion(
        12,
        "command output is byte-stable across thread counts",
        None,
        || {
            for (name, args) in GOLDEN_CASES {
                let golden_path = format!(
                    "{}/tests/golden/{name}.golden",
                    env!("CARGO_MANIFEST_DIR")
                );
                let golden = std::fs::read(&golden_path)
                    .map_err(|e| format!("missing golden file {golden_path}: {e}"))?;
                let single = run_cli("1", args)?;
                let pooled = run_cli("4", args)?;
                if single != pooled {
                    return fail(format!("{name}: output differs between thread counts"));
                }
                if single != golden {
                    return fail(format!(
                        "{name}: output drifted from the golden file\nexpected:\n{}\ngot:\n{}",
                        String::from_utf8_lossy(&golden),
                        String::from_utf8_lossy(&single)
                    ));
                }
            }
            Ok(())
        },
    );
}
