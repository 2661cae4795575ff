//! Object-language syntax: first-order terms and equations over a finite
//! signature, and modal formulas with up to two box operators.

use std::collections::BTreeSet;
use std::fmt;

/// A finite algebraic signature: symbol `k` has arity `arities[k]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    arities: Vec<usize>,
}

impl Signature {
    pub fn new(arities: Vec<usize>) -> Self {
        Signature { arities }
    }

    /// The empty signature: no function symbols at all.
    pub fn empty() -> Self {
        Signature { arities: Vec::new() }
    }

    /// One binary symbol `f0`.
    pub fn one_binary() -> Self {
        Signature { arities: vec![2] }
    }

    /// Binary `f0` and unary `f1`.
    pub fn binary_and_unary() -> Self {
        Signature { arities: vec![2, 1] }
    }

    pub fn arity(&self, symbol: usize) -> Option<usize> {
        self.arities.get(symbol).copied()
    }

    pub fn symbol_count(&self) -> usize {
        self.arities.len()
    }

    pub fn arities(&self) -> &[usize] {
        &self.arities
    }
}

/// A first-order term: a variable `x_i` or an application `f_k(t_1, ..., t_n)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(usize),
    App(usize, Vec<Term>),
}

impl Term {
    /// Node count: variables count 1, applications count 1 plus their arguments.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Indices of the variables occurring in the term.
    pub fn variables(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<usize>) {
        match self {
            Term::Var(i) => {
                out.insert(*i);
            }
            Term::App(_, args) => {
                for a in args {
                    a.collect_variables(out);
                }
            }
        }
    }

    /// True when every symbol use matches the signature's declared arity.
    pub fn conforms_to(&self, sig: &Signature) -> bool {
        match self {
            Term::Var(_) => true,
            Term::App(k, args) => {
                sig.arity(*k) == Some(args.len()) && args.iter().all(|a| a.conforms_to(sig))
            }
        }
    }

    /// Simultaneous substitution: variable `x_i` becomes `mapping[i]` when
    /// `i < mapping.len()`, and stays itself otherwise.
    pub fn apply_substitution(&self, mapping: &[Term]) -> Term {
        match self {
            Term::Var(i) => mapping.get(*i).cloned().unwrap_or_else(|| self.clone()),
            Term::App(k, args) => Term::App(
                *k,
                args.iter().map(|a| a.apply_substitution(mapping)).collect(),
            ),
        }
    }
}

/// An equation between two terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Equation {
    pub left: Term,
    pub right: Term,
}

impl Equation {
    pub fn new(left: Term, right: Term) -> Self {
        Equation { left, right }
    }

    pub fn flip(&self) -> Equation {
        Equation::new(self.right.clone(), self.left.clone())
    }

    pub fn variables(&self) -> BTreeSet<usize> {
        let mut vars = self.left.variables();
        vars.extend(self.right.variables());
        vars
    }

    pub fn conforms_to(&self, sig: &Signature) -> bool {
        self.left.conforms_to(sig) && self.right.conforms_to(sig)
    }

    pub fn apply_substitution(&self, mapping: &[Term]) -> Equation {
        Equation::new(
            self.left.apply_substitution(mapping),
            self.right.apply_substitution(mapping),
        )
    }

    /// Size of the larger side.
    pub fn max_side_size(&self) -> usize {
        self.left.size().max(self.right.size())
    }
}

/// A modal formula over propositional variables, falsum, conjunction,
/// implication, and two box operators (slot 0 and slot 1).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModalFormula {
    PropVar(usize),
    Bottom,
    And(Box<ModalFormula>, Box<ModalFormula>),
    Implies(Box<ModalFormula>, Box<ModalFormula>),
    /// `Box(slot, body)`; slot 1 is meaningful only in tense mode, where it is
    /// evaluated along the converse relation.
    Box(u8, Box<ModalFormula>),
}

impl ModalFormula {
    pub fn p(i: usize) -> Self {
        ModalFormula::PropVar(i)
    }

    pub fn and(a: ModalFormula, b: ModalFormula) -> Self {
        ModalFormula::And(Box::new(a), Box::new(b))
    }

    pub fn implies(a: ModalFormula, b: ModalFormula) -> Self {
        ModalFormula::Implies(Box::new(a), Box::new(b))
    }

    pub fn boxed(slot: u8, a: ModalFormula) -> Self {
        ModalFormula::Box(slot, Box::new(a))
    }

    /// Negation is sugar for implication into falsum.
    pub fn not(a: ModalFormula) -> Self {
        ModalFormula::implies(a, ModalFormula::Bottom)
    }

    pub fn size(&self) -> usize {
        match self {
            ModalFormula::PropVar(_) | ModalFormula::Bottom => 1,
            ModalFormula::And(a, b) | ModalFormula::Implies(a, b) => 1 + a.size() + b.size(),
            ModalFormula::Box(_, a) => 1 + a.size(),
        }
    }

    pub fn variables(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut BTreeSet<usize>) {
        match self {
            ModalFormula::PropVar(i) => {
                out.insert(*i);
            }
            ModalFormula::Bottom => {}
            ModalFormula::And(a, b) | ModalFormula::Implies(a, b) => {
                a.collect_variables(out);
                b.collect_variables(out);
            }
            ModalFormula::Box(_, a) => a.collect_variables(out),
        }
    }

    /// True when the formula mentions the slot-1 box anywhere.
    pub fn uses_converse_box(&self) -> bool {
        match self {
            ModalFormula::PropVar(_) | ModalFormula::Bottom => false,
            ModalFormula::And(a, b) | ModalFormula::Implies(a, b) => {
                a.uses_converse_box() || b.uses_converse_box()
            }
            ModalFormula::Box(slot, a) => *slot == 1 || a.uses_converse_box(),
        }
    }

    /// Uniform substitution: each propositional variable `p_i` with
    /// `i < mapping.len()` becomes `mapping[i]`; others stay themselves.
    pub fn apply_substitution(&self, mapping: &[ModalFormula]) -> ModalFormula {
        match self {
            ModalFormula::PropVar(i) => {
                mapping.get(*i).cloned().unwrap_or_else(|| self.clone())
            }
            ModalFormula::Bottom => ModalFormula::Bottom,
            ModalFormula::And(a, b) => ModalFormula::and(
                a.apply_substitution(mapping),
                b.apply_substitution(mapping),
            ),
            ModalFormula::Implies(a, b) => ModalFormula::implies(
                a.apply_substitution(mapping),
                b.apply_substitution(mapping),
            ),
            ModalFormula::Box(slot, a) => {
                ModalFormula::boxed(*slot, a.apply_substitution(mapping))
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::format_term(self))
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::format_equation(self))
    }
}

impl fmt::Display for ModalFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::format_formula(self))
    }
}
