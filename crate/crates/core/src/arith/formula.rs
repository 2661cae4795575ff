//! Prenex formulas over a closed library of recursive atoms.
//!
//! A formula is a quantifier prefix over natural-number variables `v0, v1,
//! ...` and a matrix given as a conjunction of named clauses. Set parameters
//! are baked into the formula; free set-variables are supplied at
//! evaluation time. Every atom is a total recursive predicate on codes, so
//! the matrix is decidable by construction.

use super::{ArithError, Real};
use crate::codec::{Code, Signature};
use crate::hilbert::TabTable;
use crate::kripke::Mode;
use std::collections::BTreeSet;
use std::fmt;

/// Quantifier over one natural-number variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantifier {
    ForAll,
    Exists,
}

/// Side of the arithmetical hierarchy a prefix starts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaPi {
    Sigma,
    Pi,
}

impl fmt::Display for SigmaPi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaPi::Sigma => write!(f, "Sigma"),
            SigmaPi::Pi => write!(f, "Pi"),
        }
    }
}

/// Argument position of an atom: a prefix variable or a constant code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arg {
    Var(usize),
    Const(Code),
}

impl Arg {
    pub(crate) fn var(&self) -> Option<usize> {
        match self {
            Arg::Var(i) => Some(*i),
            Arg::Const(_) => None,
        }
    }
}

/// Which set a membership-style atom consults.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetRef {
    /// Parameter baked into the formula, by slot.
    Param(usize),
    /// Free set-variable supplied at evaluation time, by slot.
    Free(usize),
}

/// The closed atom library. Each atom is a total predicate: arguments that
/// fail to decode into the expected category make the atom false, never an
/// error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Atom {
    /// The argument codes an equation over the signature.
    IsEq { sig: Signature, arg: Arg },
    /// The argument codes a term over the signature.
    IsTerm { sig: Signature, arg: Arg },
    /// `result` codes the equation `t ~ t'` where `t` is the term coded by
    /// `term` and `t'` arises from it by one replacement licensed by the
    /// equation coded by `source`.
    Rep {
        sig: Signature,
        result: Arg,
        term: Arg,
        source: Arg,
    },
    /// `result` codes a substitution instance of the equation coded by
    /// `source`.
    SubstInst {
        sig: Signature,
        result: Arg,
        source: Arg,
    },
    /// The frame coded by `frame` validates the formula coded by `formula`.
    Val { mode: Mode, frame: Arg, formula: Arg },
    /// `proof` codes a checkable proof of `goal` from the set named by
    /// `base` extended with the formula coded by `extra`.
    Proof {
        base: SetRef,
        mode: Mode,
        extra: Arg,
        proof: Arg,
        goal: Arg,
    },
    /// Membership in a parameter or free set.
    InReal { set: SetRef, arg: Arg },
    /// Plain equality of codes.
    CodeEq { left: Arg, right: Arg },
    /// The table maps the index coded by `index` to the code `result`.
    TabCode {
        table: TabTable,
        index: Arg,
        result: Arg,
    },
    /// `result` codes the left-right mirror of the equation coded by
    /// `source`; a fixed point is exactly an equation of the shape `s ~ s`.
    FlipEq {
        sig: Signature,
        result: Arg,
        source: Arg,
    },
    /// `first` codes `s ~ t`, `second` codes `t ~ u`, and `result` codes
    /// `s ~ u`.
    ChainEq {
        sig: Signature,
        result: Arg,
        first: Arg,
        second: Arg,
    },
    /// The argument codes a formula evaluable in the mode.
    IsFml { mode: Mode, arg: Arg },
    /// The argument codes a propositional tautology (boxed subformulas
    /// read as opaque atoms).
    TautologyCode { arg: Arg },
    /// `major` codes the implication from the formula coded by `minor` to
    /// the formula coded by `result`.
    MpShape {
        result: Arg,
        minor: Arg,
        major: Arg,
    },
    /// `result` codes the slot-`slot` box of the formula coded by
    /// `premise`.
    NecShape {
        slot: u8,
        result: Arg,
        premise: Arg,
    },
    /// `result` codes a substitution instance of the formula coded by
    /// `source`.
    FmlSubstInst { result: Arg, source: Arg },
    /// The argument codes a finite frame.
    IsFrame { arg: Arg },
}

impl Atom {
    pub(crate) fn args(&self) -> Vec<&Arg> {
        match self {
            Atom::IsEq { arg, .. }
            | Atom::IsTerm { arg, .. }
            | Atom::InReal { arg, .. }
            | Atom::IsFml { arg, .. }
            | Atom::TautologyCode { arg }
            | Atom::IsFrame { arg } => vec![arg],
            Atom::Rep {
                result,
                term,
                source,
                ..
            } => vec![result, term, source],
            Atom::SubstInst { result, source, .. }
            | Atom::FlipEq { result, source, .. }
            | Atom::FmlSubstInst { result, source } => vec![result, source],
            Atom::Val { frame, formula, .. } => vec![frame, formula],
            Atom::Proof {
                extra, proof, goal, ..
            } => vec![extra, proof, goal],
            Atom::CodeEq { left, right } => vec![left, right],
            Atom::TabCode { index, result, .. } => vec![index, result],
            Atom::ChainEq {
                result,
                first,
                second,
                ..
            } => vec![result, first, second],
            Atom::MpShape {
                result,
                minor,
                major,
            } => vec![result, minor, major],
            Atom::NecShape {
                result, premise, ..
            } => vec![result, premise],
        }
    }

    pub(crate) fn set_refs(&self) -> Vec<SetRef> {
        match self {
            Atom::InReal { set, .. } | Atom::Proof { base: set, .. } => vec![*set],
            _ => Vec::new(),
        }
    }
}

/// Boolean combination of atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoolExpr {
    Atom(Atom),
    Not(Box<BoolExpr>),
    And(Vec<BoolExpr>),
    Or(Vec<BoolExpr>),
    Implies(Box<BoolExpr>, Box<BoolExpr>),
}

impl BoolExpr {
    pub fn not(e: BoolExpr) -> BoolExpr {
        BoolExpr::Not(Box::new(e))
    }

    pub fn implies(premise: BoolExpr, conclusion: BoolExpr) -> BoolExpr {
        BoolExpr::Implies(Box::new(premise), Box::new(conclusion))
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<usize>) {
        self.for_each_atom(&mut |atom| {
            for arg in atom.args() {
                if let Some(v) = arg.var() {
                    out.insert(v);
                }
            }
        });
    }

    pub(crate) fn for_each_atom(&self, f: &mut impl FnMut(&Atom)) {
        match self {
            BoolExpr::Atom(atom) => f(atom),
            BoolExpr::Not(inner) => inner.for_each_atom(f),
            BoolExpr::And(items) | BoolExpr::Or(items) => {
                for item in items {
                    item.for_each_atom(f);
                }
            }
            BoolExpr::Implies(premise, conclusion) => {
                premise.for_each_atom(f);
                conclusion.for_each_atom(f);
            }
        }
    }
}

/// Strategy the bounded evaluator uses for one clause. `Exhaustive` scans
/// every tuple; the others exploit the clause's shape to enumerate only the
/// tuples that can fail, and must agree with the exhaustive scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum EvalPlan {
    Exhaustive,
    MpClosure {
        set: SetRef,
        result: usize,
        minor: usize,
        major: usize,
    },
    NecClosure {
        set: SetRef,
        result: usize,
        premise: usize,
        slots: Vec<u8>,
    },
    SubstClosure {
        set: SetRef,
        result: usize,
        source: usize,
    },
    FrameBicond {
        mode: Mode,
        lprime: SetRef,
        l: SetRef,
        frame: usize,
        pvar: usize,
        qvar: usize,
    },
    PretabDisjunction {
        mode: Mode,
        lprime: SetRef,
        tabs: TabTable,
        bottom: Code,
        fvar: usize,
    },
}

/// One named conjunct of the matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    name: String,
    body: BoolExpr,
    pub(crate) plan: EvalPlan,
}

impl Clause {
    pub fn new(name: impl Into<String>, body: BoolExpr) -> Clause {
        Clause {
            name: name.into(),
            body,
            plan: EvalPlan::Exhaustive,
        }
    }

    pub(crate) fn with_plan(name: impl Into<String>, body: BoolExpr, plan: EvalPlan) -> Clause {
        Clause {
            name: name.into(),
            body,
            plan,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn body(&self) -> &BoolExpr {
        &self.body
    }

    pub(crate) fn vars(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.body.collect_vars(&mut out);
        out
    }
}

/// A prenex formula with set parameters.
#[derive(Debug, Clone)]
pub struct ArithFormula {
    prefix: Vec<Quantifier>,
    clauses: Vec<Clause>,
    params: Vec<(String, Real)>,
    free: Vec<String>,
}

impl ArithFormula {
    /// Build a formula, checking that every atom argument is a prefix
    /// variable or a constant and every set reference has a slot.
    pub fn new(
        prefix: Vec<Quantifier>,
        clauses: Vec<Clause>,
        params: Vec<(String, Real)>,
        free: Vec<String>,
    ) -> Result<ArithFormula, ArithError> {
        for clause in &clauses {
            for v in clause.vars() {
                if v >= prefix.len() {
                    return Err(ArithError::MalformedFormula(format!(
                        "clause {} uses v{v} outside the prefix of length {}",
                        clause.name(),
                        prefix.len()
                    )));
                }
            }
            let mut bad = None;
            clause.body.for_each_atom(&mut |atom| {
                for set in atom.set_refs() {
                    let ok = match set {
                        SetRef::Param(i) => i < params.len(),
                        SetRef::Free(i) => i < free.len(),
                    };
                    if !ok && bad.is_none() {
                        bad = Some(set);
                    }
                }
            });
            if let Some(set) = bad {
                return Err(ArithError::MalformedFormula(format!(
                    "clause {} references the unbound set slot {set:?}",
                    clause.name()
                )));
            }
        }
        Ok(ArithFormula {
            prefix,
            clauses,
            params,
            free,
        })
    }

    pub(crate) fn assemble(
        prefix: Vec<Quantifier>,
        clauses: Vec<Clause>,
        params: Vec<(String, Real)>,
        free: Vec<String>,
    ) -> ArithFormula {
        ArithFormula::new(prefix, clauses, params, free).expect("builder formulas are well formed")
    }

    pub fn prefix(&self) -> &[Quantifier] {
        &self.prefix
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn params(&self) -> &[(String, Real)] {
        &self.params
    }

    pub fn free_names(&self) -> &[String] {
        &self.free
    }

    /// Syntactic position in the arithmetical hierarchy: the number of
    /// alternating quantifier blocks, sided by the first block. An empty
    /// prefix is `(Pi, 0)`.
    pub fn classify(&self) -> (SigmaPi, usize) {
        let mut blocks = 0usize;
        let mut last = None;
        for q in &self.prefix {
            if last != Some(*q) {
                blocks += 1;
                last = Some(*q);
            }
        }
        let side = match self.prefix.first() {
            Some(Quantifier::Exists) => SigmaPi::Sigma,
            _ => SigmaPi::Pi,
        };
        (side, blocks)
    }

    /// The same formula cut down to a single conjunct, for evaluating
    /// closure conditions one at a time.
    pub fn conjunct(&self, idx: usize) -> Option<ArithFormula> {
        let clause = self.clauses.get(idx)?.clone();
        Some(ArithFormula {
            prefix: self.prefix.clone(),
            clauses: vec![clause],
            params: self.params.clone(),
            free: self.free.clone(),
        })
    }

    fn set_name(&self, set: SetRef) -> &str {
        match set {
            SetRef::Param(i) => &self.params[i].0,
            SetRef::Free(i) => &self.free[i],
        }
    }

    fn fmt_arg(&self, f: &mut fmt::Formatter<'_>, arg: &Arg) -> fmt::Result {
        match arg {
            Arg::Var(i) => write!(f, "v{i}"),
            Arg::Const(c) => write!(f, "{}", c.0),
        }
    }

    fn fmt_args(&self, f: &mut fmt::Formatter<'_>, args: &[&Arg]) -> fmt::Result {
        for arg in args {
            write!(f, " ")?;
            self.fmt_arg(f, arg)?;
        }
        Ok(())
    }

    fn fmt_sig(&self, f: &mut fmt::Formatter<'_>, sig: &Signature) -> fmt::Result {
        write!(f, "(sig")?;
        for arity in sig.arities() {
            write!(f, " {arity}")?;
        }
        write!(f, ")")
    }

    fn fmt_atom(&self, f: &mut fmt::Formatter<'_>, atom: &Atom) -> fmt::Result {
        match atom {
            Atom::IsEq { sig, arg } => {
                write!(f, "(is-eq ")?;
                self.fmt_sig(f, sig)?;
                self.fmt_args(f, &[arg])?;
                write!(f, ")")
            }
            Atom::IsTerm { sig, arg } => {
                write!(f, "(is-term ")?;
                self.fmt_sig(f, sig)?;
                self.fmt_args(f, &[arg])?;
                write!(f, ")")
            }
            Atom::Rep {
                sig,
                result,
                term,
                source,
            } => {
                write!(f, "(rep ")?;
                self.fmt_sig(f, sig)?;
                self.fmt_args(f, &[result, term, source])?;
                write!(f, ")")
            }
            Atom::SubstInst {
                sig,
                result,
                source,
            } => {
                write!(f, "(subst-instance ")?;
                self.fmt_sig(f, sig)?;
                self.fmt_args(f, &[result, source])?;
                write!(f, ")")
            }
            Atom::Val {
                mode,
                frame,
                formula,
            } => {
                write!(f, "(val {mode}")?;
                self.fmt_args(f, &[frame, formula])?;
                write!(f, ")")
            }
            Atom::Proof {
                base,
                mode,
                extra,
                proof,
                goal,
            } => {
                write!(f, "(proof {} {mode}", self.set_name(*base))?;
                self.fmt_args(f, &[extra, proof, goal])?;
                write!(f, ")")
            }
            Atom::InReal { set, arg } => {
                write!(f, "(in-real {}", self.set_name(*set))?;
                self.fmt_args(f, &[arg])?;
                write!(f, ")")
            }
            Atom::CodeEq { left, right } => {
                write!(f, "(code-eq")?;
                self.fmt_args(f, &[left, right])?;
                write!(f, ")")
            }
            Atom::TabCode {
                table,
                index,
                result,
            } => {
                write!(f, "(tab-code (table")?;
                for (n, code) in table.entries() {
                    write!(f, " ({n} {})", code.0)?;
                }
                write!(f, ")")?;
                self.fmt_args(f, &[index, result])?;
                write!(f, ")")
            }
            Atom::FlipEq {
                sig,
                result,
                source,
            } => {
                write!(f, "(flip-eq ")?;
                self.fmt_sig(f, sig)?;
                self.fmt_args(f, &[result, source])?;
                write!(f, ")")
            }
            Atom::ChainEq {
                sig,
                result,
                first,
                second,
            } => {
                write!(f, "(chain-eq ")?;
                self.fmt_sig(f, sig)?;
                self.fmt_args(f, &[result, first, second])?;
                write!(f, ")")
            }
            Atom::IsFml { mode, arg } => {
                write!(f, "(is-formula {mode}")?;
                self.fmt_args(f, &[arg])?;
                write!(f, ")")
            }
            Atom::TautologyCode { arg } => {
                write!(f, "(tautology")?;
                self.fmt_args(f, &[arg])?;
                write!(f, ")")
            }
            Atom::MpShape {
                result,
                minor,
                major,
            } => {
                write!(f, "(mp-shape")?;
                self.fmt_args(f, &[result, minor, major])?;
                write!(f, ")")
            }
            Atom::NecShape {
                slot,
                result,
                premise,
            } => {
                write!(f, "(nec-shape {slot}")?;
                self.fmt_args(f, &[result, premise])?;
                write!(f, ")")
            }
            Atom::FmlSubstInst { result, source } => {
                write!(f, "(fml-subst-instance")?;
                self.fmt_args(f, &[result, source])?;
                write!(f, ")")
            }
            Atom::IsFrame { arg } => {
                write!(f, "(is-frame")?;
                self.fmt_args(f, &[arg])?;
                write!(f, ")")
            }
        }
    }

    fn fmt_body(&self, f: &mut fmt::Formatter<'_>, expr: &BoolExpr) -> fmt::Result {
        match expr {
            BoolExpr::Atom(atom) => self.fmt_atom(f, atom),
            BoolExpr::Not(inner) => {
                write!(f, "(not ")?;
                self.fmt_body(f, inner)?;
                write!(f, ")")
            }
            BoolExpr::And(items) => {
                write!(f, "(and")?;
                for item in items {
                    write!(f, " ")?;
                    self.fmt_body(f, item)?;
                }
                write!(f, ")")
            }
            BoolExpr::Or(items) => {
                write!(f, "(or")?;
                for item in items {
                    write!(f, " ")?;
                    self.fmt_body(f, item)?;
                }
                write!(f, ")")
            }
            BoolExpr::Implies(premise, conclusion) => {
                write!(f, "(implies ")?;
                self.fmt_body(f, premise)?;
                write!(f, " ")?;
                self.fmt_body(f, conclusion)?;
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for ArithFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "(formula")?;
        write!(f, "  (params")?;
        for (name, _) in &self.params {
            write!(f, " {name}")?;
        }
        writeln!(f, ")")?;
        write!(f, "  (free")?;
        for name in &self.free {
            write!(f, " {name}")?;
        }
        writeln!(f, ")")?;
        write!(f, "  (prefix")?;
        for (i, q) in self.prefix.iter().enumerate() {
            let word = match q {
                Quantifier::ForAll => "forall",
                Quantifier::Exists => "exists",
            };
            write!(f, " ({word} v{i})")?;
        }
        writeln!(f, ")")?;
        writeln!(f, "  (matrix")?;
        for clause in &self.clauses {
            write!(f, "    (clause {} ", clause.name())?;
            self.fmt_body(f, clause.body())?;
            writeln!(f, ")")?;
        }
        write!(f, "))")
    }
}
