//! Codes for finite frames: `pair(size - 1, bitmask)` with the relation
//! bitmask read row-major over the `size * size` cells.

use super::pairing::{pair, unpair, Code};
use super::{CodecError, Result};
use crate::kripke::{FiniteFrame, Mode};
use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::Zero;

/// Raw frame code: the stored relation as-is, no canonicalization.
pub fn encode_frame(frame: &FiniteFrame) -> Code {
    let n = frame.size();
    let mut mask = BigUint::zero();
    for &(a, b) in frame.edges() {
        mask.set_bit((a * n + b) as u64, true);
    }
    pair(&Code::from(n - 1), &Code(mask))
}

/// Decode a frame code. The mode is semantic, not part of the number, so the
/// caller picks it. Fails when the bitmask has bits at or beyond `size^2`.
pub fn decode_frame(code: &Code, mode: Mode) -> Result<FiniteFrame> {
    let (size_part, mask) = unpair(code);
    let n = size_part
        .to_usize()
        .and_then(|v| v.checked_add(1))
        .ok_or_else(|| CodecError::MalformedCode("frame size out of range".into()))?;
    let cells = (n as u64).checked_mul(n as u64).ok_or_else(|| {
        CodecError::MalformedCode("frame size out of range".into())
    })?;
    if mask.0.bits() > cells {
        return Err(CodecError::MalformedCode(format!(
            "relation bitmask needs {} bits but the carrier has {} cells",
            mask.0.bits(),
            cells
        )));
    }
    let mut edges = Vec::new();
    for bit in 0..mask.0.bits() {
        if mask.0.bit(bit) {
            let a = (bit / n as u64) as usize;
            let b = (bit % n as u64) as usize;
            edges.push((a, b));
        }
    }
    FiniteFrame::new(n, edges, mode)
        .map_err(|e| CodecError::MalformedCode(format!("frame rejected: {e}")))
}

/// True iff the number codes a frame.
pub fn is_frame_code(code: &Code) -> bool {
    decode_frame(code, Mode::Unimodal).is_ok()
}

/// Minimal code over all relabelings of the carrier; equal exactly on
/// isomorphic frames.
pub fn canonical_frame_code(frame: &FiniteFrame) -> Code {
    let n = frame.size();
    let mut best: Option<Code> = None;
    for perm in (0..n).permutations(n) {
        let code = encode_frame(&frame.relabel(&perm));
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    }
    best.expect("carrier is nonempty")
}
