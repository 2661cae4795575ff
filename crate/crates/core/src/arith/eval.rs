//! Bounded evaluation of prenex formulas over code assignments.
//!
//! The evaluator scans every quantified variable over `0..=bound` and reports
//! one of three verdicts. A `Falsified` verdict is sound outright: the
//! returned universal assignment makes some conjunct fail for every choice of
//! inner witnesses up to the inner bound. The other verdicts are relative to
//! the scanned window, and any approximately represented set parameter is
//! surfaced as a caveat on the report.
//!
//! Conjuncts carry an optional evaluation plan describing the shape of their
//! body. A plan replaces the tuple scan with a direct search for the least
//! falsifying assignment; `eval_bounded_naive` ignores plans so the two paths
//! can be cross-checked.

use super::formula::{Arg, ArithFormula, Atom, BoolExpr, Clause, EvalPlan, Quantifier, SetRef};
use super::{ArithError, OracleCaveat, Real};
use crate::codec::{
    decode_formula, decode_frame, equation_substitution_instance, formula_substitution_instance,
    is_eq_code, is_formula_code, is_frame_code, is_replacement_instance, is_term_code, pair,
    unpair, Code,
};
use crate::hilbert::{check_proof, decode_proof, tautology_check, ProofBase};
use crate::kripke::{validates, FiniteFrame, Mode};
use std::collections::{BTreeMap, BTreeSet};

/// Outcome of a bounded evaluation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundedVerdict {
    /// Values for the leading universal variables, in prefix order, at which
    /// some conjunct fails for every choice of the remaining variables up to
    /// the inner bound. Variables the failing conjunct does not mention are
    /// reported as zero.
    Falsified(Vec<Code>),
    /// No falsification found with every universal variable scanned up to
    /// the given bound.
    ConsistentUpTo(u64),
    /// The prefix is purely existential and a satisfying tuple was found
    /// below the given bound.
    WitnessedUpTo(u64),
}

/// A verdict together with the approximation caveats of every set parameter
/// and assigned set that cannot be represented exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalReport {
    pub verdict: BoundedVerdict,
    pub caveats: Vec<OracleCaveat>,
}

/// Evaluate with one shared bound for universal and existential variables.
pub fn eval_bounded(
    formula: &ArithFormula,
    assignment: &[Real],
    bound: u64,
) -> Result<EvalReport, ArithError> {
    eval_bounded_split(formula, assignment, bound, bound)
}

/// Evaluate with separate bounds: universal variables scan `0..=outer_bound`,
/// existential variables scan `0..=inner_bound`.
pub fn eval_bounded_split(
    formula: &ArithFormula,
    assignment: &[Real],
    outer_bound: u64,
    inner_bound: u64,
) -> Result<EvalReport, ArithError> {
    evaluate(formula, assignment, outer_bound, inner_bound, true)
}

/// Reference evaluator: plain tuple scans for every conjunct, ignoring
/// evaluation plans. Intended for cross-checking at small bounds.
pub fn eval_bounded_naive(
    formula: &ArithFormula,
    assignment: &[Real],
    bound: u64,
) -> Result<EvalReport, ArithError> {
    evaluate(formula, assignment, bound, bound, false)
}

/// Re-check a falsification witness: true when the universal assignment still
/// falsifies some conjunct with existential variables searched up to
/// `inner_bound`.
pub fn replay_falsification(
    formula: &ArithFormula,
    assignment: &[Real],
    witness: &[Code],
    inner_bound: u64,
) -> Result<bool, ArithError> {
    check_assignment(formula, assignment)?;
    let shape = analyze_prefix(formula)?;
    if shape.sigma {
        return Err(ArithError::UnsupportedPrefix(
            "a purely existential formula has no falsification witnesses".into(),
        ));
    }
    if witness.len() != shape.n_forall {
        return Err(ArithError::Assignment(format!(
            "witness has {} entries but the universal block has {}",
            witness.len(),
            shape.n_forall
        )));
    }
    let mut outer = Vec::with_capacity(witness.len());
    for code in witness {
        match code.to_u64() {
            Some(v) => outer.push(v),
            None => {
                return Err(ArithError::Assignment(
                    "witness entry exceeds the evaluable range".into(),
                ))
            }
        }
    }
    let ctx = EvalCtx {
        formula,
        assignment,
    };
    for clause in formula.clauses() {
        if clause_falsified_at(&ctx, clause, &shape, &outer, inner_bound) {
            return Ok(true);
        }
    }
    Ok(false)
}

struct PrefixShape {
    n_forall: usize,
    total: usize,
    sigma: bool,
}

fn analyze_prefix(formula: &ArithFormula) -> Result<PrefixShape, ArithError> {
    let prefix = formula.prefix();
    let n_forall = prefix
        .iter()
        .take_while(|q| **q == Quantifier::ForAll)
        .count();
    if prefix[n_forall..].iter().any(|q| *q == Quantifier::ForAll) {
        return Err(ArithError::UnsupportedPrefix(
            "evaluation needs a universal block followed by an existential block".into(),
        ));
    }
    Ok(PrefixShape {
        n_forall,
        total: prefix.len(),
        sigma: n_forall == 0 && !prefix.is_empty(),
    })
}

fn check_assignment(formula: &ArithFormula, assignment: &[Real]) -> Result<(), ArithError> {
    if assignment.len() != formula.free_names().len() {
        return Err(ArithError::Assignment(format!(
            "formula has {} free set-variables, got {}",
            formula.free_names().len(),
            assignment.len()
        )));
    }
    Ok(())
}

fn collect_caveats(formula: &ArithFormula, assignment: &[Real]) -> Vec<OracleCaveat> {
    let mut out = Vec::new();
    for (name, real) in formula.params() {
        real.caveats_into(name, &mut out);
    }
    for (name, real) in formula.free_names().iter().zip(assignment) {
        real.caveats_into(name, &mut out);
    }
    out
}

fn evaluate(
    formula: &ArithFormula,
    assignment: &[Real],
    outer_bound: u64,
    inner_bound: u64,
    use_plans: bool,
) -> Result<EvalReport, ArithError> {
    check_assignment(formula, assignment)?;
    let shape = analyze_prefix(formula)?;
    let caveats = collect_caveats(formula, assignment);
    let ctx = EvalCtx {
        formula,
        assignment,
    };

    if shape.sigma {
        let verdict = if sigma_witness_exists(&ctx, &shape, inner_bound) {
            BoundedVerdict::WitnessedUpTo(inner_bound)
        } else {
            BoundedVerdict::ConsistentUpTo(inner_bound)
        };
        return Ok(EvalReport { verdict, caveats });
    }

    for clause in formula.clauses() {
        let falsifier = if use_plans && clause.plan != EvalPlan::Exhaustive {
            falsify_with_plan(&ctx, &clause.plan, &shape, outer_bound, inner_bound)
        } else {
            falsify_exhaustive(&ctx, clause, &shape, outer_bound, inner_bound)
        };
        if let Some(env) = falsifier {
            let witness = env[..shape.n_forall].iter().map(|&x| Code::from(x)).collect();
            return Ok(EvalReport {
                verdict: BoundedVerdict::Falsified(witness),
                caveats,
            });
        }
    }
    Ok(EvalReport {
        verdict: BoundedVerdict::ConsistentUpTo(outer_bound),
        caveats,
    })
}

struct EvalCtx<'a> {
    formula: &'a ArithFormula,
    assignment: &'a [Real],
}

impl<'a> EvalCtx<'a> {
    fn real(&self, set: SetRef) -> &Real {
        match set {
            SetRef::Param(i) => &self.formula.params()[i].1,
            SetRef::Free(i) => &self.assignment[i],
        }
    }

    fn member(&self, set: SetRef, code: &Code) -> bool {
        self.real(set).contains(code)
    }

    fn arg_code(&self, arg: &Arg, env: &[u64]) -> Code {
        match arg {
            Arg::Var(i) => Code::from(env[*i]),
            Arg::Const(c) => c.clone(),
        }
    }

    fn eval_atom(&self, atom: &Atom, env: &[u64]) -> bool {
        match atom {
            Atom::IsEq { sig, arg } => is_eq_code(&self.arg_code(arg, env), sig),
            Atom::IsTerm { sig, arg } => is_term_code(&self.arg_code(arg, env), sig),
            Atom::Rep {
                sig,
                result,
                term,
                source,
            } => is_replacement_instance(
                &self.arg_code(result, env),
                &self.arg_code(term, env),
                &self.arg_code(source, env),
                sig,
            ),
            Atom::SubstInst {
                sig,
                result,
                source,
            } => equation_substitution_instance(
                &self.arg_code(result, env),
                &self.arg_code(source, env),
                sig,
            ),
            Atom::Val {
                mode,
                frame,
                formula,
            } => val_holds(
                *mode,
                &self.arg_code(frame, env),
                &self.arg_code(formula, env),
            ),
            Atom::Proof {
                base,
                mode,
                extra,
                proof,
                goal,
            } => {
                let decoded = match decode_proof(&self.arg_code(proof, env)) {
                    Ok(p) => p,
                    Err(_) => return false,
                };
                let oracle = self.real(*base);
                let proof_base = ProofBase::Oracle {
                    membership: oracle,
                    mode: *mode,
                };
                let extra = self.arg_code(extra, env);
                check_proof(&proof_base, Some(&extra), &decoded, &self.arg_code(goal, env))
                    .unwrap_or(false)
            }
            Atom::InReal { set, arg } => self.member(*set, &self.arg_code(arg, env)),
            Atom::CodeEq { left, right } => {
                self.arg_code(left, env) == self.arg_code(right, env)
            }
            Atom::TabCode {
                table,
                index,
                result,
            } => match self.arg_code(index, env).to_usize() {
                Some(n) => table.get(n) == Some(&self.arg_code(result, env)),
                None => false,
            },
            Atom::FlipEq {
                sig,
                result,
                source,
            } => {
                let source = self.arg_code(source, env);
                if !is_eq_code(&source, sig) {
                    return false;
                }
                let (l, r) = unpair(&source);
                self.arg_code(result, env) == pair(&r, &l)
            }
            Atom::ChainEq {
                sig,
                result,
                first,
                second,
            } => {
                let first = self.arg_code(first, env);
                let second = self.arg_code(second, env);
                if !is_eq_code(&first, sig) || !is_eq_code(&second, sig) {
                    return false;
                }
                let (a, b) = unpair(&first);
                let (c, d) = unpair(&second);
                b == c && self.arg_code(result, env) == pair(&a, &d)
            }
            Atom::IsFml { mode, arg } => match decode_formula(&self.arg_code(arg, env)) {
                Ok(f) => *mode == Mode::Tense || !f.uses_converse_box(),
                Err(_) => false,
            },
            Atom::TautologyCode { arg } => match decode_formula(&self.arg_code(arg, env)) {
                Ok(f) => tautology_check(&f),
                Err(_) => false,
            },
            Atom::MpShape {
                result,
                minor,
                major,
            } => {
                let major = self.arg_code(major, env);
                if !is_formula_code(&major) {
                    return false;
                }
                let (tag, payload) = unpair(&major);
                if tag != Code::from(3u64) {
                    return false;
                }
                let (antecedent, consequent) = unpair(&payload);
                antecedent == self.arg_code(minor, env)
                    && consequent == self.arg_code(result, env)
            }
            Atom::NecShape {
                slot,
                result,
                premise,
            } => {
                let result = self.arg_code(result, env);
                if !is_formula_code(&result) {
                    return false;
                }
                let (tag, payload) = unpair(&result);
                tag == Code::from(4u64 + u64::from(*slot))
                    && payload == self.arg_code(premise, env)
            }
            Atom::FmlSubstInst { result, source } => formula_substitution_instance(
                &self.arg_code(result, env),
                &self.arg_code(source, env),
            ),
            Atom::IsFrame { arg } => is_frame_code(&self.arg_code(arg, env)),
        }
    }
}

fn val_holds(mode: Mode, frame_code: &Code, formula_code: &Code) -> bool {
    let frame = match decode_frame(frame_code, mode) {
        Ok(f) => f,
        Err(_) => return false,
    };
    frame_validates(&frame, formula_code)
}

fn frame_validates(frame: &FiniteFrame, formula_code: &Code) -> bool {
    let formula = match decode_formula(formula_code) {
        Ok(f) => f,
        Err(_) => return false,
    };
    validates(frame, &formula).unwrap_or(false)
}

/// Scan bound below which a one-variable atom is precomputed into a lookup
/// table instead of being re-evaluated per tuple.
const TABLE_LIMIT: u64 = 1 << 20;

enum Compiled<'a> {
    Const(bool),
    Table { var: usize, bits: Vec<bool> },
    Atom(&'a Atom),
    Not(Box<Compiled<'a>>),
    And(Vec<Compiled<'a>>),
    Or(Vec<Compiled<'a>>),
    Implies(Box<Compiled<'a>>, Box<Compiled<'a>>),
}

fn compile<'a>(
    ctx: &EvalCtx,
    expr: &'a BoolExpr,
    env: &mut [u64],
    scanned: &BTreeMap<usize, u64>,
) -> Compiled<'a> {
    match expr {
        BoolExpr::Atom(atom) => {
            let mut vars = BTreeSet::new();
            for arg in atom.args() {
                if let Some(v) = arg.var() {
                    if scanned.contains_key(&v) {
                        vars.insert(v);
                    }
                }
            }
            match vars.len() {
                0 => Compiled::Const(ctx.eval_atom(atom, env)),
                1 => {
                    let var = *vars.iter().next().expect("one var");
                    let bound = scanned[&var];
                    if bound < TABLE_LIMIT {
                        let saved = env[var];
                        let mut bits = Vec::with_capacity(bound as usize + 1);
                        for val in 0..=bound {
                            env[var] = val;
                            bits.push(ctx.eval_atom(atom, env));
                        }
                        env[var] = saved;
                        Compiled::Table { var, bits }
                    } else {
                        Compiled::Atom(atom)
                    }
                }
                _ => Compiled::Atom(atom),
            }
        }
        BoolExpr::Not(inner) => Compiled::Not(Box::new(compile(ctx, inner, env, scanned))),
        BoolExpr::And(items) => Compiled::And(
            items
                .iter()
                .map(|e| compile(ctx, e, env, scanned))
                .collect(),
        ),
        BoolExpr::Or(items) => Compiled::Or(
            items
                .iter()
                .map(|e| compile(ctx, e, env, scanned))
                .collect(),
        ),
        BoolExpr::Implies(a, b) => Compiled::Implies(
            Box::new(compile(ctx, a, env, scanned)),
            Box::new(compile(ctx, b, env, scanned)),
        ),
    }
}

fn eval_compiled(ctx: &EvalCtx, compiled: &Compiled, env: &[u64]) -> bool {
    match compiled {
        Compiled::Const(b) => *b,
        Compiled::Table { var, bits } => bits[env[*var] as usize],
        Compiled::Atom(atom) => ctx.eval_atom(atom, env),
        Compiled::Not(inner) => !eval_compiled(ctx, inner, env),
        Compiled::And(items) => items.iter().all(|c| eval_compiled(ctx, c, env)),
        Compiled::Or(items) => items.iter().any(|c| eval_compiled(ctx, c, env)),
        Compiled::Implies(a, b) => !eval_compiled(ctx, a, env) || eval_compiled(ctx, b, env),
    }
}

/// Lexicographic scan of the listed variables over `0..=bound`; stops and
/// reports true the first time the callback does.
fn exists_tuple(
    env: &mut Vec<u64>,
    vars: &[usize],
    bound: u64,
    f: &mut dyn FnMut(&mut Vec<u64>) -> bool,
) -> bool {
    match vars.split_first() {
        None => f(env),
        Some((&v, rest)) => {
            let mut val = 0u64;
            loop {
                env[v] = val;
                if exists_tuple(env, rest, bound, f) {
                    return true;
                }
                if val == bound {
                    break;
                }
                val += 1;
            }
            env[v] = 0;
            false
        }
    }
}

fn falsify_exhaustive(
    ctx: &EvalCtx,
    clause: &Clause,
    shape: &PrefixShape,
    outer_bound: u64,
    inner_bound: u64,
) -> Option<Vec<u64>> {
    let used = clause.vars();
    let outer_vars: Vec<usize> = used.iter().copied().filter(|&v| v < shape.n_forall).collect();
    let inner_vars: Vec<usize> = used
        .iter()
        .copied()
        .filter(|&v| v >= shape.n_forall)
        .collect();
    let mut env = vec![0u64; shape.total];
    let mut scanned = BTreeMap::new();
    for &v in &outer_vars {
        scanned.insert(v, outer_bound);
    }
    for &v in &inner_vars {
        scanned.insert(v, inner_bound);
    }
    let compiled = compile(ctx, clause.body(), &mut env, &scanned);
    let mut found: Option<Vec<u64>> = None;
    let mut on_outer = |env: &mut Vec<u64>| -> bool {
        let rescued = if inner_vars.is_empty() {
            eval_compiled(ctx, &compiled, env)
        } else {
            let mut on_inner = |env: &mut Vec<u64>| eval_compiled(ctx, &compiled, env);
            exists_tuple(env, &inner_vars, inner_bound, &mut on_inner)
        };
        if rescued {
            false
        } else {
            found = Some(env.clone());
            true
        }
    };
    exists_tuple(&mut env, &outer_vars, outer_bound, &mut on_outer);
    found
}

fn sigma_witness_exists(ctx: &EvalCtx, shape: &PrefixShape, bound: u64) -> bool {
    let mut used = BTreeSet::new();
    for clause in ctx.formula.clauses() {
        clause.body().collect_vars(&mut used);
    }
    let vars: Vec<usize> = used.into_iter().collect();
    let scanned: BTreeMap<usize, u64> = vars.iter().map(|&v| (v, bound)).collect();
    let mut env = vec![0u64; shape.total];
    let compiled: Vec<Compiled> = ctx
        .formula
        .clauses()
        .iter()
        .map(|c| compile(ctx, c.body(), &mut env, &scanned))
        .collect();
    let mut hit = false;
    let mut on_tuple = |env: &mut Vec<u64>| -> bool {
        if compiled.iter().all(|c| eval_compiled(ctx, c, env)) {
            hit = true;
            true
        } else {
            false
        }
    };
    exists_tuple(&mut env, &vars, bound, &mut on_tuple);
    hit
}

fn falsify_with_plan(
    ctx: &EvalCtx,
    plan: &EvalPlan,
    shape: &PrefixShape,
    outer_bound: u64,
    inner_bound: u64,
) -> Option<Vec<u64>> {
    let total = shape.total;
    match plan {
        EvalPlan::Exhaustive => None,
        EvalPlan::MpClosure {
            set,
            result,
            minor,
            major,
        } => {
            let mut best: Option<Vec<u64>> = None;
            for m in 0..=outer_bound {
                let mc = Code::from(m);
                if !is_formula_code(&mc) {
                    continue;
                }
                let (tag, payload) = unpair(&mc);
                if tag != Code::from(3u64) {
                    continue;
                }
                let (antecedent, consequent) = unpair(&payload);
                let (Some(av), Some(cv)) = (antecedent.to_u64(), consequent.to_u64()) else {
                    continue;
                };
                if av > outer_bound || cv > outer_bound {
                    continue;
                }
                if ctx.member(*set, &mc)
                    && ctx.member(*set, &antecedent)
                    && !ctx.member(*set, &consequent)
                {
                    let mut env = vec![0u64; total];
                    env[*result] = cv;
                    env[*minor] = av;
                    env[*major] = m;
                    if best.as_ref().map_or(true, |b| env < *b) {
                        best = Some(env);
                    }
                }
            }
            best
        }
        EvalPlan::NecClosure {
            set,
            result,
            premise,
            slots,
        } => {
            let mut best: Option<Vec<u64>> = None;
            for i in 0..=outer_bound {
                let ic = Code::from(i);
                if !is_formula_code(&ic) {
                    continue;
                }
                let (tag, payload) = unpair(&ic);
                let Some(tag_v) = tag.to_u64() else { continue };
                if !(4..=5).contains(&tag_v) || !slots.contains(&((tag_v - 4) as u8)) {
                    continue;
                }
                let Some(pv) = payload.to_u64() else { continue };
                if pv > outer_bound {
                    continue;
                }
                if ctx.member(*set, &payload) && !ctx.member(*set, &ic) {
                    let mut env = vec![0u64; total];
                    env[*result] = i;
                    env[*premise] = pv;
                    if best.as_ref().map_or(true, |b| env < *b) {
                        best = Some(env);
                    }
                }
            }
            best
        }
        EvalPlan::SubstClosure {
            set,
            result,
            source,
        } => {
            let members: Vec<(u64, Code)> = (0..=outer_bound)
                .map(|j| (j, Code::from(j)))
                .filter(|(_, c)| ctx.member(*set, c))
                .collect();
            let mut best: Option<Vec<u64>> = None;
            for i in 0..=outer_bound {
                let ic = Code::from(i);
                if !is_formula_code(&ic) || ctx.member(*set, &ic) {
                    continue;
                }
                for (j, jc) in &members {
                    if formula_substitution_instance(&ic, jc) {
                        let mut env = vec![0u64; total];
                        env[*result] = i;
                        env[*source] = *j;
                        if best.as_ref().map_or(true, |b| env < *b) {
                            best = Some(env);
                        }
                        break;
                    }
                }
                if best.is_some() && *result < *source {
                    break;
                }
            }
            best
        }
        EvalPlan::FrameBicond {
            mode,
            lprime,
            l,
            frame,
            pvar,
            qvar,
        } => {
            let scan_to = outer_bound.max(inner_bound);
            for fcode in 0..=outer_bound {
                let fc = Code::from(fcode);
                let fr = match decode_frame(&fc, *mode) {
                    Ok(fr) => fr,
                    Err(_) => continue,
                };
                let mut pfail_outer: Option<u64> = None;
                let mut qfail_outer: Option<u64> = None;
                let mut a_fails_inner = false;
                let mut b_fails_inner = false;
                for x in 0..=scan_to {
                    if a_fails_inner && b_fails_inner {
                        break;
                    }
                    let need_p = (pfail_outer.is_none() && x <= outer_bound)
                        || (!a_fails_inner && x <= inner_bound);
                    let need_q = (qfail_outer.is_none() && x <= outer_bound)
                        || (!b_fails_inner && x <= inner_bound);
                    if !need_p && !need_q {
                        continue;
                    }
                    let xc = Code::from(x);
                    if need_p && ctx.member(*lprime, &xc) && !frame_validates(&fr, &xc) {
                        if x <= outer_bound && pfail_outer.is_none() {
                            pfail_outer = Some(x);
                        }
                        if x <= inner_bound {
                            a_fails_inner = true;
                        }
                    }
                    if need_q && ctx.member(*l, &xc) && !frame_validates(&fr, &xc) {
                        if x <= outer_bound && qfail_outer.is_none() {
                            qfail_outer = Some(x);
                        }
                        if x <= inner_bound {
                            b_fails_inner = true;
                        }
                    }
                }
                if a_fails_inner && b_fails_inner {
                    continue;
                }
                let mut candidates: Vec<(u64, u64)> = Vec::new();
                if let Some(p) = pfail_outer {
                    candidates.push((p, 0));
                }
                if let Some(q) = qfail_outer {
                    candidates.push((0, q));
                }
                if let Some(&(pv, qv)) = candidates.iter().min() {
                    let mut env = vec![0u64; total];
                    env[*frame] = fcode;
                    env[*pvar] = pv;
                    env[*qvar] = qv;
                    return Some(env);
                }
            }
            None
        }
        EvalPlan::PretabDisjunction {
            mode,
            lprime,
            tabs,
            bottom,
            fvar,
        } => {
            for i in 0..=outer_bound {
                let ic = Code::from(i);
                let fml = match decode_formula(&ic) {
                    Ok(f) => f,
                    Err(_) => continue,
                };
                if *mode == Mode::Unimodal && fml.uses_converse_box() {
                    continue;
                }
                if ctx.member(*lprime, &ic) {
                    continue;
                }
                if proof_exists(ctx, *lprime, *mode, &ic, bottom, inner_bound) {
                    continue;
                }
                let mut discharged = false;
                for (n, goal) in tabs.entries() {
                    if *n as u64 > inner_bound {
                        continue;
                    }
                    match goal.to_u64() {
                        Some(gv) if gv <= inner_bound => {}
                        _ => continue,
                    }
                    if proof_exists(ctx, *lprime, *mode, &ic, goal, inner_bound) {
                        discharged = true;
                        break;
                    }
                }
                if !discharged {
                    let mut env = vec![0u64; total];
                    env[*fvar] = i;
                    return Some(env);
                }
            }
            None
        }
    }
}

fn proof_exists(
    ctx: &EvalCtx,
    set: SetRef,
    mode: Mode,
    extra: &Code,
    goal: &Code,
    bound: u64,
) -> bool {
    let oracle = ctx.real(set);
    let proof_base = ProofBase::Oracle {
        membership: oracle,
        mode,
    };
    for p in 0..=bound {
        let pc = Code::from(p);
        let decoded = match decode_proof(&pc) {
            Ok(d) => d,
            Err(_) => continue,
        };
        if check_proof(&proof_base, Some(extra), &decoded, goal).unwrap_or(false) {
            return true;
        }
    }
    false
}

fn clause_falsified_at(
    ctx: &EvalCtx,
    clause: &Clause,
    shape: &PrefixShape,
    outer: &[u64],
    inner_bound: u64,
) -> bool {
    let mut env = vec![0u64; shape.total];
    env[..outer.len()].copy_from_slice(outer);
    match &clause.plan {
        EvalPlan::FrameBicond {
            mode,
            lprime,
            l,
            frame,
            pvar,
            qvar,
        } => {
            let fc = Code::from(env[*frame]);
            let fr = match decode_frame(&fc, *mode) {
                Ok(fr) => fr,
                Err(_) => return false,
            };
            let a_holds =
                |x: &Code| !ctx.member(*lprime, x) || frame_validates(&fr, x);
            let b_holds = |x: &Code| !ctx.member(*l, x) || frame_validates(&fr, x);
            if a_holds(&Code::from(env[*pvar])) && b_holds(&Code::from(env[*qvar])) {
                return false;
            }
            let exists_a = (0..=inner_bound).any(|x| !a_holds(&Code::from(x)));
            let exists_b = (0..=inner_bound).any(|x| !b_holds(&Code::from(x)));
            !(exists_a && exists_b)
        }
        EvalPlan::PretabDisjunction {
            mode,
            lprime,
            tabs,
            bottom,
            fvar,
        } => {
            let ic = Code::from(env[*fvar]);
            let fml = match decode_formula(&ic) {
                Ok(f) => f,
                Err(_) => return false,
            };
            if *mode == Mode::Unimodal && fml.uses_converse_box() {
                return false;
            }
            if ctx.member(*lprime, &ic) {
                return false;
            }
            if proof_exists(ctx, *lprime, *mode, &ic, bottom, inner_bound) {
                return false;
            }
            for (n, goal) in tabs.entries() {
                if *n as u64 > inner_bound {
                    continue;
                }
                match goal.to_u64() {
                    Some(gv) if gv <= inner_bound => {}
                    _ => continue,
                }
                if proof_exists(ctx, *lprime, *mode, &ic, goal, inner_bound) {
                    return false;
                }
            }
            true
        }
        _ => {
            let used = clause.vars();
            let inner_vars: Vec<usize> = used
                .into_iter()
                .filter(|&v| v >= shape.n_forall)
                .collect();
            let scanned: BTreeMap<usize, u64> =
                inner_vars.iter().map(|&v| (v, inner_bound)).collect();
            let compiled = compile(ctx, clause.body(), &mut env, &scanned);
            let mut on_inner = |env: &mut Vec<u64>| eval_compiled(ctx, &compiled, env);
            !exists_tuple(&mut env, &inner_vars, inner_bound, &mut on_inner)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{
        build_fmp_formula, build_interval_formula, build_pretab_formula, TheoryApprox,
    };
    use crate::codec::{encode_formula, parse_equation, parse_formula, Signature};
    use crate::eqlogic::{AxiomSet, SaturationBudget};
    use crate::hilbert::TabTable;
    use crate::kripke::LogicPresentation;
    use std::collections::BTreeMap as Map;

    fn sig() -> Signature {
        Signature::one_binary()
    }

    fn codes(values: &[u64]) -> Vec<Code> {
        values.iter().map(|&v| Code::from(v)).collect()
    }

    #[test]
    fn empty_set_fails_reflexivity_and_the_witness_replays() {
        let f = build_interval_formula(&sig(), Real::empty(), Real::AllEquations(sig()));
        let assignment = [Real::empty()];
        let report = eval_bounded(&f, &assignment, 8).expect("evaluates");
        assert_eq!(report.verdict, BoundedVerdict::Falsified(codes(&[0, 0, 0])));
        assert!(report.caveats.is_empty());

        let naive = eval_bounded_naive(&f, &assignment, 8).expect("evaluates");
        assert_eq!(naive.verdict, report.verdict);

        assert_eq!(
            replay_falsification(&f, &assignment, &codes(&[0, 0, 0]), 8),
            Ok(true)
        );
        assert_eq!(
            replay_falsification(&f, &assignment, &codes(&[5, 0, 0]), 8),
            Ok(false)
        );
    }

    #[test]
    fn saturated_commutative_theory_sits_inside_the_interval() {
        let comm = parse_equation("f0(x0, x1) = f0(x1, x0)").expect("parses");
        let axioms = AxiomSet::new(sig(), vec![comm.clone()]).expect("valid axioms");
        let budget = SaturationBudget::new(4, 3, 20_000).expect("valid budget");
        let phi = Real::approx(TheoryApprox::equational_under(&axioms, budget));
        let lower = Real::finite([crate::codec::encode_equation(&comm)]);
        let f = build_interval_formula(&sig(), lower, Real::AllEquations(sig()));
        let report = eval_bounded(&f, &[phi], 64).expect("evaluates");
        assert_eq!(report.verdict, BoundedVerdict::ConsistentUpTo(64));
        assert_eq!(
            report.caveats,
            vec![OracleCaveat {
                parameter: "Phi".into(),
                polarity: crate::arith::Polarity::Under,
            }]
        );
    }

    #[test]
    fn the_full_equation_set_is_an_interval_fixpoint() {
        let all = Real::AllEquations(sig());
        let f = build_interval_formula(&sig(), all.clone(), all.clone());
        let report = eval_bounded(&f, &[all], 48).expect("evaluates");
        assert_eq!(report.verdict, BoundedVerdict::ConsistentUpTo(48));
        assert!(report.caveats.is_empty());
    }

    #[test]
    fn reflexivity_axiom_shrinks_the_frame_class() {
        let t_axiom = parse_formula("box0 p0 -> p0").expect("parses");
        assert_eq!(encode_formula(&t_axiom), Code::from(1766u64));
        let k = LogicPresentation::minimal(Mode::Unimodal);
        let kt = LogicPresentation::new(Mode::Unimodal, vec![t_axiom]).expect("unimodal");
        let l = Real::approx(TheoryApprox::modal_under(&k, 3));
        let lprime = Real::approx(TheoryApprox::modal_under(&kt, 3));
        let f = build_fmp_formula(Mode::Unimodal, Real::empty(), l);
        let assignment = [lprime];
        let report = eval_bounded(&f, &assignment, 1766).expect("evaluates");
        assert_eq!(
            report.verdict,
            BoundedVerdict::Falsified(codes(&[0, 1766, 0]))
        );
        let flagged: Vec<&str> = report
            .caveats
            .iter()
            .map(|c| c.parameter.as_str())
            .collect();
        assert_eq!(flagged, ["L", "Lprime"]);
        assert_eq!(
            replay_falsification(&f, &assignment, &codes(&[0, 1766, 0]), 1766),
            Ok(true)
        );
    }

    #[test]
    fn a_logic_always_agrees_with_itself_on_frames() {
        let k = LogicPresentation::minimal(Mode::Unimodal);
        let l = Real::approx(TheoryApprox::modal_under(&k, 3));
        let f = build_fmp_formula(Mode::Unimodal, Real::empty(), l.clone());
        let report = eval_bounded(&f, &[l], 120).expect("evaluates");
        assert_eq!(report.verdict, BoundedVerdict::ConsistentUpTo(120));
    }

    #[test]
    fn closure_plans_agree_with_the_exhaustive_scan() {
        let shell = build_fmp_formula(Mode::Unimodal, Real::empty(), Real::empty());

        let mp = shell.conjunct(3).expect("modus ponens clause");
        let mp_set = [Real::finite(codes(&[11, 1]))];
        let planned = eval_bounded(&mp, &mp_set, 12).expect("evaluates");
        let scanned = eval_bounded_naive(&mp, &mp_set, 12).expect("evaluates");
        assert_eq!(planned.verdict, BoundedVerdict::Falsified(codes(&[0, 1, 11])));
        assert_eq!(planned.verdict, scanned.verdict);

        let nec = shell.conjunct(4).expect("necessitation clause");
        let nec_set = [Real::finite(codes(&[6]))];
        let planned = eval_bounded(&nec, &nec_set, 61).expect("evaluates");
        let scanned = eval_bounded_naive(&nec, &nec_set, 61).expect("evaluates");
        assert_eq!(planned.verdict, BoundedVerdict::Falsified(codes(&[61, 6, 0])));
        assert_eq!(planned.verdict, scanned.verdict);

        let subst = shell.conjunct(5).expect("substitution clause");
        let subst_set = [Real::finite(codes(&[6]))];
        let planned = eval_bounded(&subst, &subst_set, 32).expect("evaluates");
        let scanned = eval_bounded_naive(&subst, &subst_set, 32).expect("evaluates");
        assert_eq!(planned.verdict, BoundedVerdict::Falsified(codes(&[32, 6, 0])));
        assert_eq!(planned.verdict, scanned.verdict);

        let agreement = shell.conjunct(7).expect("frame agreement clause");
        let box_bottom = [Real::finite(codes(&[16]))];
        let planned = eval_bounded(&agreement, &box_bottom, 30).expect("evaluates");
        let scanned = eval_bounded_naive(&agreement, &box_bottom, 30).expect("evaluates");
        assert_eq!(planned.verdict, BoundedVerdict::Falsified(codes(&[2, 16, 0])));
        assert_eq!(planned.verdict, scanned.verdict);
    }

    #[test]
    fn inner_bound_relativity_shows_up_in_frame_agreement() {
        let shell = build_fmp_formula(
            Mode::Unimodal,
            Real::empty(),
            Real::finite(codes(&[16])),
        );
        let agreement = shell.conjunct(7).expect("frame agreement clause");
        let assignment = [Real::finite(codes(&[16]))];
        let balanced = eval_bounded(&agreement, &assignment, 30).expect("evaluates");
        assert_eq!(balanced.verdict, BoundedVerdict::ConsistentUpTo(30));
        let starved = eval_bounded_split(&agreement, &assignment, 30, 0).expect("evaluates");
        assert_eq!(
            starved.verdict,
            BoundedVerdict::Falsified(codes(&[2, 0, 16]))
        );
        let naive = {
            let report = eval_bounded_naive(&agreement, &assignment, 30).expect("evaluates");
            report.verdict
        };
        assert_eq!(naive, BoundedVerdict::ConsistentUpTo(30));
    }

    #[test]
    fn the_full_formula_set_satisfies_pretabularity_trivially() {
        let tabs = TabTable::new(Map::from([(3usize, Code::from(16u64))])).expect("tab table");
        let f = build_pretab_formula(Real::finite(codes(&[1])), &tabs);
        let report =
            eval_bounded(&f, &[Real::AllFormulas(Mode::Tense)], 120).expect("evaluates");
        assert_eq!(report.verdict, BoundedVerdict::ConsistentUpTo(120));
        assert!(report.caveats.is_empty());
    }

    #[test]
    fn inconsistent_extension_discharges_every_pretabularity_instance() {
        let tabs = TabTable::new(Map::from([(3usize, Code::from(16u64))])).expect("tab table");
        let f = build_pretab_formula(Real::finite(codes(&[1])), &tabs);
        let clause = f.conjunct(7).expect("disjunction clause");
        let bottom_logic =
            LogicPresentation::new(Mode::Tense, vec![crate::codec::ModalFormula::Bottom])
                .expect("tense");
        let lprime = Real::approx(TheoryApprox::modal_under(&bottom_logic, 3));
        // falsum is one base-axiom line, so the falsum branch discharges
        // every code the approximation misses
        let report = eval_bounded(&clause, &[lprime], 40).expect("evaluates");
        assert_eq!(report.verdict, BoundedVerdict::ConsistentUpTo(40));
        assert_eq!(report.caveats.len(), 1);
        assert_eq!(report.caveats[0].parameter, "Lprime");
    }

    #[test]
    fn pretabularity_plan_matches_naive_on_finite_sets() {
        let tabs = TabTable::new(Map::from([(0usize, Code::from(3u64))])).expect("tab table");
        let f = build_pretab_formula(Real::empty(), &tabs);
        let clause = f.conjunct(7).expect("disjunction clause");
        let assignment = [Real::finite(codes(&[6]))];
        let planned = eval_bounded(&clause, &assignment, 6).expect("evaluates");
        let scanned = eval_bounded_naive(&clause, &assignment, 6).expect("evaluates");
        assert_eq!(planned.verdict, BoundedVerdict::Falsified(codes(&[0, 0, 0])));
        assert_eq!(planned.verdict, scanned.verdict);
        assert_eq!(
            replay_falsification(&clause, &assignment, &codes(&[0, 0, 0]), 6),
            Ok(true)
        );
    }

    #[test]
    fn bound_zero_checks_only_the_origin() {
        let f = build_interval_formula(
            &sig(),
            Real::empty(),
            Real::AllEquations(sig()),
        );
        let report = eval_bounded(&f, &[Real::finite(codes(&[0]))], 0).expect("evaluates");
        assert_eq!(report.verdict, BoundedVerdict::ConsistentUpTo(0));
    }

    #[test]
    fn purely_existential_prefixes_search_for_a_witness() {
        let body = BoolExpr::Atom(Atom::InReal {
            set: SetRef::Free(0),
            arg: Arg::Var(0),
        });
        let f = ArithFormula::new(
            vec![Quantifier::Exists],
            vec![Clause::new("hits-the-set", body)],
            vec![],
            vec!["X".into()],
        )
        .expect("well formed");
        let x = [Real::finite(codes(&[5]))];
        let found = eval_bounded(&f, &x, 10).expect("evaluates");
        assert_eq!(found.verdict, BoundedVerdict::WitnessedUpTo(10));
        let missed = eval_bounded(&f, &x, 3).expect("evaluates");
        assert_eq!(missed.verdict, BoundedVerdict::ConsistentUpTo(3));
    }

    #[test]
    fn alternations_beyond_forall_exists_are_rejected() {
        let body = BoolExpr::implies(
            BoolExpr::Atom(Atom::InReal {
                set: SetRef::Free(0),
                arg: Arg::Var(0),
            }),
            BoolExpr::Atom(Atom::InReal {
                set: SetRef::Free(0),
                arg: Arg::Var(1),
            }),
        );
        let f = ArithFormula::new(
            vec![Quantifier::Exists, Quantifier::ForAll],
            vec![Clause::new("mixed", body)],
            vec![],
            vec!["X".into()],
        )
        .expect("well formed");
        let err = eval_bounded(&f, &[Real::empty()], 4).unwrap_err();
        assert!(matches!(err, ArithError::UnsupportedPrefix(_)));
    }

    #[test]
    fn assignment_arity_and_witness_length_are_validated() {
        let f = build_interval_formula(&sig(), Real::empty(), Real::AllEquations(sig()));
        assert!(matches!(
            eval_bounded(&f, &[], 4),
            Err(ArithError::Assignment(_))
        ));
        assert!(matches!(
            replay_falsification(&f, &[Real::empty()], &codes(&[0]), 4),
            Err(ArithError::Assignment(_))
        ));
    }
}
