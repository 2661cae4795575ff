//! Bounded evidence scan for pretabularity.
//!
//! For each formula code up to a bound, try to discharge the code by one of
//! three certificates: the logic plus that formula proves bottom, the
//! formula is itself a theorem, or the extension proves one of the supplied
//! tab formulas. Certificates are searched with the bounded prover, so a
//! Falsified verdict is evidence at the given bounds, not a refutation.
//! Inconsistency is tried first: an inconsistent extension eventually
//! proves everything, and its bottom proof is the shortest certificate, so
//! trying it first keeps the reported reasons stable as bounds grow.

use super::{search_proof, HilbertError};
use crate::codec::{decode_formula, encode_formula, parse_formula, Code, ModalFormula};
use crate::kripke::{LogicPresentation, Mode};
use std::collections::BTreeMap;

/// Indexed codes of tab formulas, loaded from a plug-in file. Which
/// formulas actually axiomatize tabular extensions is the supplier's
/// responsibility; this type only guarantees every code decodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TabTable {
    entries: BTreeMap<usize, Code>,
}

impl TabTable {
    pub fn new(entries: BTreeMap<usize, Code>) -> Result<Self, HilbertError> {
        for (n, code) in &entries {
            decode_formula(code)
                .map_err(|e| HilbertError::BadTabTable(format!("entry {n}: {e}")))?;
        }
        Ok(TabTable { entries })
    }

    /// Parse the file format: one `n <formula>` entry per line, with blank
    /// lines and `#` comments skipped.
    pub fn parse(text: &str) -> Result<Self, HilbertError> {
        let mut entries = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: String| HilbertError::BadTabTable(format!("line {}: {msg}", lineno + 1));
            let (index, rest) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| bad("expected `n <formula>`".into()))?;
            let index: usize = index
                .parse()
                .map_err(|_| bad(format!("bad index {index:?}")))?;
            let formula =
                parse_formula(rest.trim()).map_err(|e| bad(e.to_string()))?;
            if entries.insert(index, encode_formula(&formula)).is_some() {
                return Err(bad(format!("duplicate index {index}")));
            }
        }
        Ok(TabTable { entries })
    }

    pub fn entries(&self) -> &BTreeMap<usize, Code> {
        &self.entries
    }

    pub fn get(&self, n: usize) -> Option<&Code> {
        self.entries.get(&n)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Which certificate discharged a code. Variants mirror the three disjuncts
/// of the pretabularity rendering: membership, a tab proof, a bottom proof.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DischargedBy {
    /// The formula is a theorem of the logic itself.
    Membership,
    /// The extension proves the tab formula with this index.
    Tabular { n: usize },
    /// The extension proves bottom.
    Inconsistency,
}

/// Per-code certificate ledger for a completed scan. Codes that do not
/// decode to formulas are skipped and absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PretabReport {
    pub discharged: BTreeMap<u64, DischargedBy>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PretabOutcome {
    Consistent(PretabReport),
    /// The first formula code no disjunct discharged within the bounds.
    Falsified(Code),
}

fn size_cap(goal: &ModalFormula) -> usize {
    goal.size() + 4
}

/// Scan all formula codes up to `formula_code_bound`, searching each
/// certificate with proofs of at most `proof_length_bound` steps.
pub fn pretabular_bounded(
    logic: &LogicPresentation,
    tabs: &TabTable,
    formula_code_bound: u64,
    proof_length_bound: usize,
) -> Result<PretabOutcome, HilbertError> {
    if logic.mode != Mode::Tense {
        return Err(HilbertError::ModeMismatch(
            "pretabularity scan expects a tense logic".into(),
        ));
    }
    if tabs.is_empty() {
        return Err(HilbertError::BadTabTable("no entries".into()));
    }
    let bottom = ModalFormula::Bottom;
    let bottom_code = encode_formula(&bottom);
    let mut discharged = BTreeMap::new();
    for i in 0..=formula_code_bound {
        let code = Code::from(i);
        let Ok(formula) = decode_formula(&code) else {
            continue;
        };
        let inconsistent = search_proof(
            logic,
            Some(&code),
            &bottom_code,
            proof_length_bound,
            size_cap(&bottom),
        )
        .is_found();
        let verdict = if inconsistent {
            Some(DischargedBy::Inconsistency)
        } else if search_proof(logic, None, &code, proof_length_bound, size_cap(&formula))
            .is_found()
        {
            Some(DischargedBy::Membership)
        } else {
            tabs.entries()
                .iter()
                .find(|(_, tab_code)| {
                    let tab_formula = decode_formula(tab_code).expect("validated at load");
                    search_proof(
                        logic,
                        Some(&code),
                        tab_code,
                        proof_length_bound,
                        size_cap(&tab_formula),
                    )
                    .is_found()
                })
                .map(|(n, _)| DischargedBy::Tabular { n: *n })
        };
        match verdict {
            Some(d) => {
                discharged.insert(i, d);
            }
            None => return Ok(PretabOutcome::Falsified(code)),
        }
    }
    Ok(PretabOutcome::Consistent(PretabReport { discharged }))
}
