//! Finite algebras as a brute-force semantic oracle.
//!
//! Algebras are enumerated in lexicographic order of their concatenated
//! operation tables (last entry fastest), assignments in lexicographic
//! order of the assignment vector, so every search result is reproducible.

use super::{AxiomSet, EqError};
use crate::codec::{Equation, Signature, Term};

/// Candidate-table budget accepted without an explicit override.
pub const DEFAULT_ALGEBRA_CEILING: u64 = 1_000_000;

/// A finite algebra for a signature: one total operation table per symbol
/// over the carrier `{0..size-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    size: usize,
    signature: Signature,
    tables: Vec<Vec<usize>>,
}

impl FiniteAlgebra {
    pub fn new(
        size: usize,
        signature: Signature,
        tables: Vec<Vec<usize>>,
    ) -> Result<Self, EqError> {
        if size == 0 {
            return Err(EqError::SignatureMismatch(
                "carrier must be nonempty".into(),
            ));
        }
        if tables.len() != signature.symbol_count() {
            return Err(EqError::SignatureMismatch(format!(
                "{} tables for {} symbols",
                tables.len(),
                signature.symbol_count()
            )));
        }
        for (k, table) in tables.iter().enumerate() {
            let expect = size.pow(signature.arity(k).unwrap() as u32);
            if table.len() != expect {
                return Err(EqError::SignatureMismatch(format!(
                    "table {k} has {} entries, expected {expect}",
                    table.len()
                )));
            }
            if table.iter().any(|&v| v >= size) {
                return Err(EqError::SignatureMismatch(format!(
                    "table {k} has an entry outside the carrier"
                )));
            }
        }
        Ok(FiniteAlgebra {
            size,
            signature,
            tables,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn table(&self, symbol: usize) -> &[usize] {
        &self.tables[symbol]
    }

    /// Look up one operation, first argument most significant.
    pub fn apply(&self, symbol: usize, args: &[usize]) -> usize {
        let idx = args.iter().fold(0, |acc, &a| acc * self.size + a);
        self.tables[symbol][idx]
    }

    /// Evaluate a term under an assignment vector indexed by variable.
    pub fn eval(&self, t: &Term, assignment: &[usize]) -> Result<usize, EqError> {
        match t {
            Term::Var(i) => assignment.get(*i).copied().ok_or_else(|| {
                EqError::SignatureMismatch(format!("variable x{i} has no assigned value"))
            }),
            Term::App(k, args) => {
                if self.signature.arity(*k) != Some(args.len()) {
                    return Err(EqError::SignatureMismatch(format!(
                        "symbol f{k} with {} arguments does not fit the algebra",
                        args.len()
                    )));
                }
                let vals = args
                    .iter()
                    .map(|a| self.eval(a, assignment))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(self.apply(*k, &vals))
            }
        }
    }
}

/// Number of candidate algebras of the given carrier size, i.e. the product
/// over symbols of `size^(size^arity)`. None on overflow.
pub fn table_space(sig: &Signature, size: usize) -> Option<u128> {
    let mut total: u128 = 1;
    for &arity in sig.arities() {
        let entries = (size as u128).checked_pow(arity as u32)?;
        let entries: u32 = entries.try_into().ok()?;
        let tables = (size as u128).checked_pow(entries)?;
        total = total.checked_mul(tables)?;
    }
    Some(total)
}

/// All algebras of exactly the given carrier size, lexicographic by
/// concatenated table entries.
pub fn enumerate_algebras(sig: &Signature, size: usize) -> Result<Vec<FiniteAlgebra>, EqError> {
    enumerate_algebras_with_ceiling(sig, size, DEFAULT_ALGEBRA_CEILING)
}

pub fn enumerate_algebras_with_ceiling(
    sig: &Signature,
    size: usize,
    ceiling: u64,
) -> Result<Vec<FiniteAlgebra>, EqError> {
    let mut out = Vec::new();
    for_each_algebra(sig, size, ceiling, &mut |alg| {
        out.push(alg.clone());
        true
    })?;
    Ok(out)
}

/// Drive `visit` over the algebras of one size in lexicographic order until
/// it returns false; streaming, so large spaces never materialize.
fn for_each_algebra(
    sig: &Signature,
    size: usize,
    ceiling: u64,
    visit: &mut dyn FnMut(&FiniteAlgebra) -> bool,
) -> Result<(), EqError> {
    if size == 0 {
        return Err(EqError::SignatureMismatch(
            "carrier must be nonempty".into(),
        ));
    }
    match table_space(sig, size) {
        Some(space) if space <= ceiling as u128 => {}
        _ => {
            return Err(EqError::EnumerationTooLarge(format!(
                "size {size} needs more than {ceiling} candidate tables"
            )));
        }
    }
    let splits: Vec<usize> = sig
        .arities()
        .iter()
        .map(|&a| size.pow(a as u32))
        .collect();
    let total: usize = splits.iter().sum();
    let mut flat = vec![0usize; total];
    loop {
        let mut tables = Vec::with_capacity(splits.len());
        let mut start = 0;
        for &len in &splits {
            tables.push(flat[start..start + len].to_vec());
            start += len;
        }
        let alg = FiniteAlgebra::new(size, sig.clone(), tables)
            .expect("enumerated tables are well-formed");
        if !visit(&alg) {
            return Ok(());
        }
        // Mixed-radix increment, last entry fastest.
        let mut pos = total;
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            if flat[pos] + 1 < size {
                flat[pos] += 1;
                break;
            }
            flat[pos] = 0;
        }
    }
}

/// True iff the equation holds under every assignment of carrier elements
/// to its variables.
pub fn holds_in(alg: &FiniteAlgebra, e: &Equation) -> Result<bool, EqError> {
    if !e.conforms_to(alg.signature()) {
        return Err(EqError::SignatureMismatch(format!(
            "equation {e} does not fit the algebra's signature"
        )));
    }
    Ok(falsifying_assignment(alg, e)?.is_none())
}

/// The lexicographically smallest assignment falsifying `e`, as a vector
/// indexed by variable with non-occurring variables pinned to 0.
fn falsifying_assignment(
    alg: &FiniteAlgebra,
    e: &Equation,
) -> Result<Option<Vec<usize>>, EqError> {
    let vars: Vec<usize> = e.variables().into_iter().collect();
    let width = vars.iter().max().map_or(0, |v| v + 1);
    let mut assignment = vec![0usize; width];
    loop {
        if alg.eval(&e.left, &assignment)? != alg.eval(&e.right, &assignment)? {
            return Ok(Some(assignment));
        }
        // Advance the occurring variables only, last one fastest.
        let mut pos = vars.len();
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            let v = vars[pos];
            if assignment[v] + 1 < alg.size() {
                assignment[v] += 1;
                break;
            }
            assignment[v] = 0;
        }
    }
}

/// Outcome of a bounded counter-model search. `Unknown` never claims the
/// equation is derivable, only that no counter-model exists at these sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RefutationOutcome {
    CounterModel {
        algebra: FiniteAlgebra,
        assignment: Vec<usize>,
    },
    Unknown,
}

impl RefutationOutcome {
    pub fn is_counter_model(&self) -> bool {
        matches!(self, RefutationOutcome::CounterModel { .. })
    }
}

/// Search carriers of size 1 through `max_algebra_size` for an algebra
/// satisfying every axiom while falsifying `e`.
pub fn refutes(
    ax: &AxiomSet,
    e: &Equation,
    max_algebra_size: usize,
) -> Result<RefutationOutcome, EqError> {
    refutes_with_ceiling(ax, e, max_algebra_size, DEFAULT_ALGEBRA_CEILING)
}

pub fn refutes_with_ceiling(
    ax: &AxiomSet,
    e: &Equation,
    max_algebra_size: usize,
    ceiling: u64,
) -> Result<RefutationOutcome, EqError> {
    if !e.conforms_to(ax.signature()) {
        return Err(EqError::SignatureMismatch(format!(
            "equation {e} does not fit the axiom signature"
        )));
    }
    let mut found: Option<RefutationOutcome> = None;
    for size in 1..=max_algebra_size {
        let mut error = None;
        for_each_algebra(ax.signature(), size, ceiling, &mut |alg| {
            let satisfies_axioms = ax
                .axioms()
                .iter()
                .all(|axiom| holds_in(alg, axiom).unwrap_or(false));
            if !satisfies_axioms {
                return true;
            }
            match falsifying_assignment(alg, e) {
                Ok(Some(assignment)) => {
                    found = Some(RefutationOutcome::CounterModel {
                        algebra: alg.clone(),
                        assignment,
                    });
                    false
                }
                Ok(None) => true,
                Err(err) => {
                    error = Some(err);
                    false
                }
            }
        })?;
        if let Some(err) = error {
            return Err(err);
        }
        if let Some(outcome) = found {
            return Ok(outcome);
        }
    }
    Ok(RefutationOutcome::Unknown)
}
