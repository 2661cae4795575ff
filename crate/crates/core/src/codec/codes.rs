//! Codes for terms, equations, and modal formulas.

use super::pairing::{pair, seq_decode, seq_encode, unpair, Code};
use super::syntax::{Equation, ModalFormula, Signature, Term};
use super::{CodecError, Result};

/// `code(x_i) = 2 i`; `code(f_k(t_1, ..., t_n)) = 2 pair(k, seq(codes)) + 1`.
pub fn encode_term(term: &Term) -> Code {
    match term {
        Term::Var(i) => Code(num_bigint::BigUint::from(*i) << 1),
        Term::App(k, args) => {
            let arg_codes: Vec<Code> = args.iter().map(encode_term).collect();
            let payload = pair(&Code::from(*k), &seq_encode(&arg_codes));
            Code((payload.0 << 1) + 1u32)
        }
    }
}

/// Decode a term code, validating every symbol and arity against `sig`.
pub fn decode_term(code: &Code, sig: &Signature) -> Result<Term> {
    if code.is_even() {
        let idx = Code(code.0.clone() >> 1);
        let i = idx
            .to_usize()
            .ok_or_else(|| CodecError::MalformedCode(format!("variable index too large: {idx}")))?;
        return Ok(Term::Var(i));
    }
    let payload = Code(code.0.clone() >> 1);
    let (sym, args_seq) = unpair(&payload);
    let k = sym
        .to_usize()
        .ok_or_else(|| CodecError::MalformedCode(format!("symbol index too large: {sym}")))?;
    let arity = sig
        .arity(k)
        .ok_or_else(|| CodecError::UnknownSymbol(format!("no symbol f{k} in signature")))?;
    let arg_codes = seq_decode(&args_seq);
    if arg_codes.len() != arity {
        return Err(CodecError::UnknownSymbol(format!(
            "f{k} expects {arity} arguments, code supplies {}",
            arg_codes.len()
        )));
    }
    let args = arg_codes
        .iter()
        .map(|c| decode_term(c, sig))
        .collect::<Result<Vec<_>>>()?;
    Ok(Term::App(k, args))
}

/// True iff the number codes a term over `sig`.
pub fn is_term_code(code: &Code, sig: &Signature) -> bool {
    decode_term(code, sig).is_ok()
}

/// `code(s ~ t) = pair(code(s), code(t))`.
pub fn encode_equation(eq: &Equation) -> Code {
    pair(&encode_term(&eq.left), &encode_term(&eq.right))
}

pub fn decode_equation(code: &Code, sig: &Signature) -> Result<Equation> {
    let (l, r) = unpair(code);
    Ok(Equation::new(decode_term(&l, sig)?, decode_term(&r, sig)?))
}

/// True iff the number codes an equation over `sig`.
pub fn is_eq_code(code: &Code, sig: &Signature) -> bool {
    let (l, r) = unpair(code);
    is_term_code(&l, sig) && is_term_code(&r, sig)
}

const TAG_PROPVAR: u64 = 0;
const TAG_BOTTOM: u64 = 1;
const TAG_AND: u64 = 2;
const TAG_IMPLIES: u64 = 3;
const TAG_BOX0: u64 = 4;
const TAG_BOX1: u64 = 5;

/// `code(phi) = pair(tag, payload)`; the payload is a variable index, zero,
/// a pair of subformula codes, or a single subformula code by tag.
pub fn encode_formula(f: &ModalFormula) -> Code {
    match f {
        ModalFormula::PropVar(i) => pair(&Code::from(TAG_PROPVAR), &Code::from(*i)),
        ModalFormula::Bottom => pair(&Code::from(TAG_BOTTOM), &Code::zero()),
        ModalFormula::And(a, b) => pair(
            &Code::from(TAG_AND),
            &pair(&encode_formula(a), &encode_formula(b)),
        ),
        ModalFormula::Implies(a, b) => pair(
            &Code::from(TAG_IMPLIES),
            &pair(&encode_formula(a), &encode_formula(b)),
        ),
        ModalFormula::Box(slot, a) => {
            let tag = if *slot == 0 { TAG_BOX0 } else { TAG_BOX1 };
            pair(&Code::from(tag), &encode_formula(a))
        }
    }
}

pub fn decode_formula(code: &Code) -> Result<ModalFormula> {
    let (tag, payload) = unpair(code);
    match tag.to_u64() {
        Some(TAG_PROPVAR) => {
            let i = payload.to_usize().ok_or_else(|| {
                CodecError::MalformedCode(format!("propositional index too large: {payload}"))
            })?;
            Ok(ModalFormula::PropVar(i))
        }
        Some(TAG_BOTTOM) => {
            if payload.is_zero() {
                Ok(ModalFormula::Bottom)
            } else {
                Err(CodecError::MalformedCode(
                    "falsum carries a nonzero payload".into(),
                ))
            }
        }
        Some(TAG_AND) => {
            let (a, b) = unpair(&payload);
            Ok(ModalFormula::and(decode_formula(&a)?, decode_formula(&b)?))
        }
        Some(TAG_IMPLIES) => {
            let (a, b) = unpair(&payload);
            Ok(ModalFormula::implies(
                decode_formula(&a)?,
                decode_formula(&b)?,
            ))
        }
        Some(TAG_BOX0) => Ok(ModalFormula::boxed(0, decode_formula(&payload)?)),
        Some(TAG_BOX1) => Ok(ModalFormula::boxed(1, decode_formula(&payload)?)),
        _ => Err(CodecError::MalformedCode(format!(
            "unknown formula tag {tag}"
        ))),
    }
}

/// True iff the number codes a modal formula.
pub fn is_formula_code(code: &Code) -> bool {
    decode_formula(code).is_ok()
}
