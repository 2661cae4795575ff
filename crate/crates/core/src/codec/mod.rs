//! Godel numbering for the object languages.
//!
//! One coding scheme is pinned here and reused everywhere:
//!
//! * `pair(a, b) = (a + b)(a + b + 1)/2 + b`, the Cantor pairing bijection.
//! * Sequences: `seq([]) = 0`, `seq(x : rest) = pair(x, seq(rest)) + 1`.
//! * Terms: `code(x_i) = 2 i`; `code(f_k(t_1, ..., t_n)) = 2 pair(k, seq(codes)) + 1`.
//!   Parity separates variables from applications.
//! * Equations: `code(s ~ t) = pair(code(s), code(t))`.
//! * Modal formulas: `pair(tag, payload)` with tags 0 propositional variable,
//!   1 falsum, 2 conjunction, 3 implication, 4 box-0, 5 box-1.
//! * Frames: `pair(n - 1, bitmask)` with the relation bitmask laid out
//!   row-major over the n*n cells.
//!
//! Codes grow superexponentially in term size, so everything runs on
//! arbitrary-precision naturals. Decoders are validators: a number that does
//! not denote a well-formed object of the expected category is rejected,
//! never coerced.

mod codes;
mod frames;
mod pairing;
mod rep;
mod syntax;
mod text;

pub use codes::{
    decode_equation, decode_formula, decode_term, encode_equation, encode_formula, encode_term,
    is_eq_code, is_formula_code, is_term_code,
};
pub use frames::{canonical_frame_code, decode_frame, encode_frame, is_frame_code};
pub use pairing::{pair, seq_decode, seq_encode, unpair, Code};
pub use rep::{
    equation_substitution_instance, formula_matches, formula_substitution_instance,
    is_replacement_instance, replacement_results, substitution_instance,
};
pub use syntax::{Equation, ModalFormula, Signature, Term};
pub use text::{
    format_equation, format_formula, format_frame, format_term, parse_equation, parse_formula,
    parse_frame, parse_signature, parse_term,
};

use thiserror::Error;

/// Failures raised while decoding or translating coded objects.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    /// The number is not a well-formed code for the expected category.
    #[error("malformed code: {0}")]
    MalformedCode(String),
    /// A symbol index or arity disagrees with the governing signature.
    #[error("unknown symbol or arity mismatch: {0}")]
    UnknownSymbol(String),
    /// Text input failed to parse.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, CodecError>;
