//! Numeric codes for whole proof objects.
//!
//! A step is `pair(formula code, justification code)` and a proof is the
//! sequence code of its steps. Justifications are tagged pairs:
//!
//! | tag | payload                              |
//! |-----|--------------------------------------|
//! | 0   | 0 (in-base citation)                 |
//! | 1   | 0 (tautology)                        |
//! | 2   | slot (distribution instance)         |
//! | 3   | slot (duality instance)              |
//! | 4   | substitution (extra-axiom instance)  |
//! | 5   | pair(major, minor) (modus ponens)    |
//! | 6   | pair(premise, slot) (necessitation)  |
//! | 7   | pair(axiom, substitution)            |
//!
//! A substitution is the sequence code of `pair(var, formula code)` entries
//! with strictly increasing variables. Decoding validates every layer.

use super::{HilbertError, Justification, ProofObject};
use crate::codec::{
    decode_formula, encode_formula, pair, seq_decode, seq_encode, unpair, Code, ModalFormula,
};

fn encode_substitution(substitution: &[(usize, ModalFormula)]) -> Code {
    let entries: Vec<Code> = substitution
        .iter()
        .map(|(v, f)| pair(&Code::from(*v), &encode_formula(f)))
        .collect();
    seq_encode(&entries)
}

fn decode_substitution(code: &Code) -> Result<Vec<(usize, ModalFormula)>, HilbertError> {
    let mut out = Vec::new();
    for entry in seq_decode(code) {
        let (var, fml) = unpair(&entry);
        let var = var.to_usize().ok_or_else(|| {
            HilbertError::MalformedCode("substitution variable too large".into())
        })?;
        let fml = decode_formula(&fml)
            .map_err(|e| HilbertError::MalformedCode(format!("substitution target: {e}")))?;
        if let Some((last, _)) = out.last() {
            if *last >= var {
                return Err(HilbertError::MalformedCode(
                    "substitution variables must be strictly increasing".into(),
                ));
            }
        }
        out.push((var, fml));
    }
    Ok(out)
}

fn encode_justification(j: &Justification) -> Code {
    let (tag, payload) = match j {
        Justification::InBase => (0u64, Code::zero()),
        Justification::Tautology => (1, Code::zero()),
        Justification::KInstance { slot } => (2, Code::from(u64::from(*slot))),
        Justification::TenseDuality { slot } => (3, Code::from(u64::from(*slot))),
        Justification::ExtraAxiomInstance { substitution } => {
            (4, encode_substitution(substitution))
        }
        Justification::MP { major, minor } => {
            (5, pair(&Code::from(*major), &Code::from(*minor)))
        }
        Justification::Nec { premise, slot } => (
            6,
            pair(&Code::from(*premise), &Code::from(u64::from(*slot))),
        ),
        Justification::BaseAxiomInstance {
            axiom,
            substitution,
        } => (
            7,
            pair(&Code::from(*axiom), &encode_substitution(substitution)),
        ),
    };
    pair(&Code::from(tag), &payload)
}

fn decode_index(code: &Code, what: &str) -> Result<usize, HilbertError> {
    code.to_usize()
        .ok_or_else(|| HilbertError::MalformedCode(format!("{what} index too large")))
}

fn decode_slot(code: &Code, what: &str) -> Result<u8, HilbertError> {
    match code.to_u64() {
        Some(v @ 0..=1) => Ok(v as u8),
        _ => Err(HilbertError::MalformedCode(format!(
            "{what} slot must be 0 or 1"
        ))),
    }
}

fn decode_justification(code: &Code) -> Result<Justification, HilbertError> {
    let (tag, payload) = unpair(code);
    let tag = tag.to_u64().ok_or_else(|| {
        HilbertError::MalformedCode("justification tag too large".into())
    })?;
    match tag {
        0 | 1 => {
            if !payload.is_zero() {
                return Err(HilbertError::MalformedCode(format!(
                    "justification tag {tag} takes no payload"
                )));
            }
            Ok(if tag == 0 {
                Justification::InBase
            } else {
                Justification::Tautology
            })
        }
        2 => Ok(Justification::KInstance {
            slot: decode_slot(&payload, "distribution")?,
        }),
        3 => Ok(Justification::TenseDuality {
            slot: decode_slot(&payload, "duality")?,
        }),
        4 => Ok(Justification::ExtraAxiomInstance {
            substitution: decode_substitution(&payload)?,
        }),
        5 => {
            let (major, minor) = unpair(&payload);
            Ok(Justification::MP {
                major: decode_index(&major, "major premise")?,
                minor: decode_index(&minor, "minor premise")?,
            })
        }
        6 => {
            let (premise, slot) = unpair(&payload);
            Ok(Justification::Nec {
                premise: decode_index(&premise, "premise")?,
                slot: decode_slot(&slot, "necessitation")?,
            })
        }
        7 => {
            let (axiom, substitution) = unpair(&payload);
            Ok(Justification::BaseAxiomInstance {
                axiom: decode_index(&axiom, "axiom")?,
                substitution: decode_substitution(&substitution)?,
            })
        }
        _ => Err(HilbertError::MalformedCode(format!(
            "unknown justification tag {tag}"
        ))),
    }
}

pub fn encode_proof(proof: &ProofObject) -> Code {
    let steps: Vec<Code> = proof
        .steps()
        .iter()
        .map(|(f, j)| pair(&encode_formula(f), &encode_justification(j)))
        .collect();
    seq_encode(&steps)
}

/// Decode a proof code, validating formula codes, tags, payload shapes and
/// substitution ordering. Index plausibility is the verifier's job.
pub fn decode_proof(code: &Code) -> Result<ProofObject, HilbertError> {
    let mut steps = Vec::new();
    for step in seq_decode(code) {
        let (fml, just) = unpair(&step);
        let formula = decode_formula(&fml)
            .map_err(|e| HilbertError::MalformedCode(format!("step formula: {e}")))?;
        steps.push((formula, decode_justification(&just)?));
    }
    Ok(ProofObject::new(steps))
}
