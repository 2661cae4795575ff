//! Bounded forward saturation under the five closure rules, with traces.
//!
//! The term universe is every term whose node count stays within the size
//! bound and whose variables come from the budgeted alphabet. Saturation is
//! a FIFO worklist; each processed equation fires the rules in a fixed
//! order (symmetry, transitivity, replacement, substitution), so the run is
//! fully deterministic. Reflexivity only seeds, it never fires.

use super::{AxiomSet, SaturationBudget};
use crate::codec::{replacement_results, Equation, Signature, Term};
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

/// One derivation step; premises are stored as full equations so a trace
/// can be replayed outside the saturation that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Step {
    Axiom,
    Reflexivity,
    Symmetry {
        from: Equation,
    },
    Transitivity {
        left: Equation,
        right: Equation,
    },
    Replacement {
        term: Term,
        using: Equation,
    },
    /// `mapping` lists one replacement term per variable of `from`.
    Substitution {
        from: Equation,
        mapping: Vec<(usize, Term)>,
    },
}

impl Step {
    pub fn rule_name(&self) -> &'static str {
        match self {
            Step::Axiom => "axiom",
            Step::Reflexivity => "reflexivity",
            Step::Symmetry { .. } => "symmetry",
            Step::Transitivity { .. } => "transitivity",
            Step::Replacement { .. } => "replacement",
            Step::Substitution { .. } => "substitution",
        }
    }

    fn premises(&self) -> Vec<&Equation> {
        match self {
            Step::Axiom | Step::Reflexivity => Vec::new(),
            Step::Symmetry { from } => vec![from],
            Step::Transitivity { left, right } => vec![left, right],
            Step::Replacement { using, .. } => vec![using],
            Step::Substitution { from, .. } => vec![from],
        }
    }
}

/// Everything a saturation run produced. `exhausted` reports whether the
/// worklist drained within the iteration budget, i.e. whether `derived` is
/// actually closed under the rules at this size bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationResult {
    derived: BTreeSet<Equation>,
    exhausted: bool,
    traces: BTreeMap<Equation, Step>,
}

impl SaturationResult {
    pub fn derived(&self) -> &BTreeSet<Equation> {
        &self.derived
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted
    }

    pub fn traces(&self) -> &BTreeMap<Equation, Step> {
        &self.traces
    }

    pub fn contains(&self, eq: &Equation) -> bool {
        self.derived.contains(eq)
    }

    /// Replay every trace: each step must be valid on its own, every premise
    /// must itself carry a trace, and the premise graph must be well-founded.
    pub fn verify(&self, ax: &AxiomSet) -> bool {
        if self.derived.len() != self.traces.len()
            || !self.derived.iter().all(|e| self.traces.contains_key(e))
        {
            return false;
        }
        for (eq, step) in &self.traces {
            if !verify_step(eq, step, ax) {
                return false;
            }
            if !step.premises().iter().all(|p| self.traces.contains_key(*p)) {
                return false;
            }
        }
        // Well-foundedness: no equation may depend on itself.
        let mut state: HashMap<&Equation, u8> = HashMap::new();
        for eq in self.traces.keys() {
            if !self.acyclic_from(eq, &mut state) {
                return false;
            }
        }
        true
    }

    fn acyclic_from<'a>(&'a self, eq: &'a Equation, state: &mut HashMap<&'a Equation, u8>) -> bool {
        match state.get(eq) {
            Some(2) => return true,
            Some(_) => return false,
            None => {}
        }
        state.insert(eq, 1);
        for premise in self.traces[eq].premises() {
            if !self.acyclic_from(premise, state) {
                return false;
            }
        }
        state.insert(eq, 2);
        true
    }

    /// A minimal derivation of `goal`: steps ordered premises-first, ending
    /// with `goal` itself. None when `goal` was not derived.
    pub fn chain_to(&self, goal: &Equation) -> Option<Vec<(Equation, Step)>> {
        self.traces.get(goal)?;
        let mut ordered = Vec::new();
        let mut done: BTreeSet<&Equation> = BTreeSet::new();
        let mut stack: Vec<(&Equation, bool)> = vec![(goal, false)];
        while let Some((eq, expanded)) = stack.pop() {
            if done.contains(eq) {
                continue;
            }
            if expanded {
                done.insert(eq);
                ordered.push((eq.clone(), self.traces[eq].clone()));
            } else {
                stack.push((eq, true));
                for premise in self.traces[eq].premises() {
                    stack.push((premise, false));
                }
            }
        }
        Some(ordered)
    }
}

/// Check one step against its stated rule, independently of how it was
/// found.
pub fn verify_step(eq: &Equation, step: &Step, ax: &AxiomSet) -> bool {
    match step {
        Step::Axiom => ax.axioms().contains(eq),
        Step::Reflexivity => eq.left == eq.right,
        Step::Symmetry { from } => from.left == eq.right && from.right == eq.left,
        Step::Transitivity { left, right } => {
            left.left == eq.left && left.right == right.left && right.right == eq.right
        }
        Step::Replacement { term, using } => {
            eq.left == *term && replacement_results(term, using).contains(&eq.right)
        }
        Step::Substitution { from, mapping } => {
            let vars = from.variables();
            if mapping.len() != vars.len()
                || !mapping.iter().map(|(v, _)| *v).eq(vars.iter().copied())
            {
                return false;
            }
            let width = mapping.iter().map(|(v, _)| v + 1).max().unwrap_or(0);
            let mut full: Vec<Term> = (0..width).map(Term::Var).collect();
            for (v, t) in mapping {
                full[*v] = t.clone();
            }
            from.apply_substitution(&full) == *eq
        }
    }
}

/// Every term over `sig` with node count at most `max_size` and variables
/// among `x_0..x_{max_vars-1}`, in increasing structural order.
pub fn term_universe(sig: &Signature, max_size: usize, max_vars: usize) -> Vec<Term> {
    let mut by_size: Vec<Vec<Term>> = vec![Vec::new(); max_size + 1];
    for s in 1..=max_size {
        let mut level = Vec::new();
        if s == 1 {
            level.extend((0..max_vars).map(Term::Var));
        }
        for (k, &arity) in sig.arities().iter().enumerate() {
            if arity == 0 && s == 1 {
                level.push(Term::App(k, Vec::new()));
            }
            if arity >= 1 && s >= arity + 1 {
                let mut args = Vec::with_capacity(arity);
                build_apps(k, arity, s - 1, &by_size, &mut args, &mut level);
            }
        }
        by_size[s] = level;
    }
    let mut all: Vec<Term> = by_size.into_iter().flatten().collect();
    all.sort();
    all
}

fn build_apps(
    symbol: usize,
    remaining_slots: usize,
    remaining_size: usize,
    by_size: &[Vec<Term>],
    args: &mut Vec<Term>,
    out: &mut Vec<Term>,
) {
    if remaining_slots == 0 {
        if remaining_size == 0 {
            out.push(Term::App(symbol, args.clone()));
        }
        return;
    }
    let reserve = remaining_slots - 1;
    for part in 1..=remaining_size.saturating_sub(reserve) {
        for candidate in &by_size[part] {
            args.push(candidate.clone());
            build_apps(symbol, reserve, remaining_size - part, by_size, args, out);
            args.pop();
        }
    }
}

struct Saturator<'a> {
    universe: &'a [Term],
    index: &'a BTreeMap<Term, u32>,
    by_size: Vec<Vec<u32>>,
    max_size: usize,
    derived: HashSet<(u32, u32)>,
    traces: HashMap<(u32, u32), Step>,
    by_left: Vec<Vec<u32>>,
    by_right: Vec<Vec<u32>>,
    queue: VecDeque<(u32, u32)>,
}

impl<'a> Saturator<'a> {
    fn eq(&self, l: u32, r: u32) -> Equation {
        Equation::new(
            self.universe[l as usize].clone(),
            self.universe[r as usize].clone(),
        )
    }

    fn add(&mut self, l: u32, r: u32, step: Step) {
        if self.derived.insert((l, r)) {
            self.traces.insert((l, r), step);
            self.by_left[l as usize].push(r);
            self.by_right[r as usize].push(l);
            self.queue.push_back((l, r));
        }
    }

    fn fire_rules(&mut self, l: u32, r: u32) {
        let premise = self.eq(l, r);
        self.add(r, l, Step::Symmetry {
            from: premise.clone(),
        });
        for c in self.by_left[r as usize].clone() {
            self.add(l, c, Step::Transitivity {
                left: premise.clone(),
                right: self.eq(r, c),
            });
        }
        for a in self.by_right[l as usize].clone() {
            self.add(a, r, Step::Transitivity {
                left: self.eq(a, l),
                right: premise.clone(),
            });
        }
        for host in 0..self.universe.len() {
            let results = replacement_results(&self.universe[host], &premise);
            for replaced in results {
                if let Some(&j) = self.index.get(&replaced) {
                    self.add(host as u32, j, Step::Replacement {
                        term: self.universe[host].clone(),
                        using: premise.clone(),
                    });
                }
            }
        }
        self.fire_substitutions(&premise);
    }

    /// All substitution instances of `premise` whose two sides stay inside
    /// the universe. Candidates are enumerated per variable in increasing
    /// size with the growth budget of both sides tracked, so oversized
    /// instances are pruned before they are built.
    fn fire_substitutions(&mut self, premise: &Equation) {
        let vars: Vec<usize> = premise.variables().into_iter().collect();
        if vars.is_empty() {
            return;
        }
        let occ_left = occurrence_counts(&premise.left, &vars);
        let occ_right = occurrence_counts(&premise.right, &vars);
        let mut chosen: Vec<Term> = Vec::with_capacity(vars.len());
        let mut instances = Vec::new();
        self.assign_vars(
            premise,
            &vars,
            &occ_left,
            &occ_right,
            premise.left.size(),
            premise.right.size(),
            &mut chosen,
            &mut instances,
        );
        for (mapping, l2, r2) in instances {
            self.add(l2, r2, Step::Substitution {
                from: premise.clone(),
                mapping,
            });
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn assign_vars(
        &self,
        premise: &Equation,
        vars: &[usize],
        occ_left: &[usize],
        occ_right: &[usize],
        left_size: usize,
        right_size: usize,
        chosen: &mut Vec<Term>,
        out: &mut Vec<(Vec<(usize, Term)>, u32, u32)>,
    ) {
        let level = chosen.len();
        if level == vars.len() {
            let width = vars.iter().max().unwrap() + 1;
            let mut full: Vec<Term> = (0..width).map(Term::Var).collect();
            for (v, t) in vars.iter().zip(chosen.iter()) {
                full[*v] = t.clone();
            }
            let instance = premise.apply_substitution(&full);
            let l2 = self.index[&instance.left];
            let r2 = self.index[&instance.right];
            let mapping = vars.iter().copied().zip(chosen.iter().cloned()).collect();
            out.push((mapping, l2, r2));
            return;
        }
        for size in 1..=self.max_size {
            let growth = size - 1;
            if left_size + occ_left[level] * growth > self.max_size
                && occ_left[level] > 0
            {
                break;
            }
            if right_size + occ_right[level] * growth > self.max_size
                && occ_right[level] > 0
            {
                break;
            }
            for &candidate in &self.by_size[size] {
                chosen.push(self.universe[candidate as usize].clone());
                self.assign_vars(
                    premise,
                    vars,
                    occ_left,
                    occ_right,
                    left_size + occ_left[level] * growth,
                    right_size + occ_right[level] * growth,
                    chosen,
                    out,
                );
                chosen.pop();
            }
        }
    }
}

fn occurrence_counts(t: &Term, vars: &[usize]) -> Vec<usize> {
    let mut counts = vec![0usize; vars.len()];
    count_occurrences(t, vars, &mut counts);
    counts
}

fn count_occurrences(t: &Term, vars: &[usize], counts: &mut [usize]) {
    match t {
        Term::Var(v) => {
            if let Some(pos) = vars.iter().position(|x| x == v) {
                counts[pos] += 1;
            }
        }
        Term::App(_, args) => {
            for a in args {
                count_occurrences(a, vars, counts);
            }
        }
    }
}

/// Saturate the axiom set under the five rules inside the budgeted term
/// universe. Axioms that do not fit the universe are skipped; they can
/// still enter through nothing, so a too-small budget silently weakens the
/// run, which `exhausted` does not detect. Choose the size bound to cover
/// the axioms.
pub fn saturate(ax: &AxiomSet, budget: SaturationBudget) -> SaturationResult {
    let universe = term_universe(ax.signature(), budget.max_term_size(), budget.max_vars());
    let index: BTreeMap<Term, u32> = universe
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i as u32))
        .collect();
    let mut by_size: Vec<Vec<u32>> = vec![Vec::new(); budget.max_term_size() + 1];
    for (i, t) in universe.iter().enumerate() {
        by_size[t.size()].push(i as u32);
    }
    let n = universe.len();
    let mut sat = Saturator {
        universe: &universe,
        index: &index,
        by_size,
        max_size: budget.max_term_size(),
        derived: HashSet::new(),
        traces: HashMap::new(),
        by_left: vec![Vec::new(); n],
        by_right: vec![Vec::new(); n],
        queue: VecDeque::new(),
    };
    for i in 0..n as u32 {
        sat.add(i, i, Step::Reflexivity);
    }
    for axiom in ax.axioms() {
        if let (Some(&l), Some(&r)) = (sat.index.get(&axiom.left), sat.index.get(&axiom.right)) {
            sat.add(l, r, Step::Axiom);
        }
    }
    let mut iterations = 0usize;
    let mut exhausted = true;
    while let Some((l, r)) = sat.queue.pop_front() {
        if iterations >= budget.max_iterations() {
            sat.queue.push_front((l, r));
            exhausted = false;
            break;
        }
        iterations += 1;
        sat.fire_rules(l, r);
    }
    let derived: BTreeSet<Equation> = sat
        .derived
        .iter()
        .map(|&(l, r)| sat.eq(l, r))
        .collect();
    let traces: BTreeMap<Equation, Step> = sat
        .traces
        .iter()
        .map(|(&(l, r), step)| (sat.eq(l, r), step.clone()))
        .collect();
    SaturationResult {
        derived,
        exhausted,
        traces,
    }
}

/// Outcome of a bounded derivability query. `Unknown` never asserts
/// non-derivability; the closure is only approximated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DerivationOutcome {
    Derived { steps: Vec<(Equation, Step)> },
    Unknown,
}

impl DerivationOutcome {
    pub fn is_derived(&self) -> bool {
        matches!(self, DerivationOutcome::Derived { .. })
    }
}

/// Search for a derivation of `goal` within the budget; a `Derived` answer
/// always carries a replayable trace chain.
pub fn derives(ax: &AxiomSet, goal: &Equation, budget: SaturationBudget) -> DerivationOutcome {
    if !goal.conforms_to(ax.signature()) {
        return DerivationOutcome::Unknown;
    }
    let result = saturate(ax, budget);
    match result.chain_to(goal) {
        Some(steps) => DerivationOutcome::Derived { steps },
        None => DerivationOutcome::Unknown,
    }
}
