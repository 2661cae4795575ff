//! Enumeration of finite frames up to isomorphism.
//!
//! The representative of an isomorphism class is the frame whose row-major
//! relation bitmask is lexicographically minimal over all carrier
//! permutations, matching the canonical code in the codec. Results are
//! returned in increasing canonical-code order; codes of different carrier
//! sizes interleave, so the whole run is materialized before sorting.

use super::{FiniteFrame, KripkeError, Mode};
use crate::codec::encode_frame;
use itertools::Itertools;
use rayon::prelude::*;

/// Largest `max_size` accepted without an explicit override.
pub const DEFAULT_FRAME_SIZE_CEILING: usize = 5;

/// All frames of carrier size 1 through `max_size`, one per isomorphism
/// class, in increasing canonical-code order.
pub fn enumerate_frames(max_size: usize, mode: Mode) -> Result<Vec<FiniteFrame>, KripkeError> {
    enumerate_frames_with_ceiling(max_size, mode, DEFAULT_FRAME_SIZE_CEILING)
}

/// As [`enumerate_frames`] with an explicit ceiling; the ceiling itself is
/// capped so relation bitmasks fit one machine word.
pub fn enumerate_frames_with_ceiling(
    max_size: usize,
    mode: Mode,
    ceiling: usize,
) -> Result<Vec<FiniteFrame>, KripkeError> {
    if max_size > ceiling || max_size * max_size > 49 {
        return Err(KripkeError::EnumerationTooLarge(format!(
            "max_size {max_size} exceeds the ceiling {ceiling}"
        )));
    }
    let mut frames = Vec::new();
    for n in 1..=max_size {
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        let cells = (n * n) as u32;
        let survivors: Vec<u64> = (0u64..1 << cells)
            .into_par_iter()
            .filter(|&mask| is_minimal_mask(mask, n, &perms))
            .collect();
        for mask in survivors {
            frames.push(frame_of_mask(mask, n, mode));
        }
    }
    frames.sort_by_cached_key(|f| encode_frame(f).0.clone());
    Ok(frames)
}

/// True when no carrier permutation sends the mask to a smaller one.
fn is_minimal_mask(mask: u64, n: usize, perms: &[Vec<usize>]) -> bool {
    perms
        .iter()
        .skip(1)
        .all(|perm| apply_perm_mask(mask, n, perm) >= mask)
}

fn apply_perm_mask(mask: u64, n: usize, perm: &[usize]) -> u64 {
    let mut rest = mask;
    let mut out = 0u64;
    while rest != 0 {
        let bit = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        out |= 1 << (perm[bit / n] * n + perm[bit % n]);
    }
    out
}

fn frame_of_mask(mask: u64, n: usize, mode: Mode) -> FiniteFrame {
    let edges = (0..n * n)
        .filter(|cell| mask >> cell & 1 == 1)
        .map(|cell| (cell / n, cell % n));
    FiniteFrame::new(n, edges, mode).expect("mask cells are in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{canonical_frame_code, encode_frame};

    /// Orbit count of the permutation action on relation cells, by the
    /// orbit-counting lemma: average 2^(cycles of the induced cell action).
    fn burnside_count(n: usize) -> u64 {
        let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
        let total: u64 = perms
            .iter()
            .map(|perm| {
                let mut seen = vec![false; n * n];
                let mut cycles = 0u32;
                for start in 0..n * n {
                    if seen[start] {
                        continue;
                    }
                    cycles += 1;
                    let mut cell = start;
                    while !seen[cell] {
                        seen[cell] = true;
                        cell = perm[cell / n] * n + perm[cell % n];
                    }
                }
                1u64 << cycles
            })
            .sum();
        total / perms.len() as u64
    }

    #[test]
    fn class_counts_match_the_orbit_counting_oracle() {
        assert_eq!(burnside_count(1), 2);
        assert_eq!(burnside_count(2), 10);
        assert_eq!(burnside_count(3), 104);
        assert_eq!(burnside_count(4), 3044);
        let frames = enumerate_frames(4, Mode::Unimodal).unwrap();
        for n in 1..=4 {
            let at_size = frames.iter().filter(|f| f.size() == n).count() as u64;
            assert_eq!(at_size, burnside_count(n), "size {n}");
        }
        assert_eq!(frames.len(), 2 + 10 + 104 + 3044);
    }

    #[test]
    fn cumulative_counts_for_small_sizes() {
        assert_eq!(enumerate_frames(1, Mode::Unimodal).unwrap().len(), 2);
        assert_eq!(enumerate_frames(2, Mode::Unimodal).unwrap().len(), 12);
        assert_eq!(enumerate_frames(3, Mode::Tense).unwrap().len(), 116);
    }

    #[test]
    fn output_is_sorted_by_canonical_code_and_already_canonical() {
        let frames = enumerate_frames(3, Mode::Unimodal).unwrap();
        let codes: Vec<_> = frames.iter().map(encode_frame).collect();
        for pair in codes.windows(2) {
            assert!(pair[0] < pair[1], "codes out of order or repeated");
        }
        for frame in &frames {
            assert_eq!(encode_frame(frame), canonical_frame_code(frame));
        }
    }

    #[test]
    fn ceiling_is_enforced() {
        assert!(matches!(
            enumerate_frames(6, Mode::Unimodal),
            Err(KripkeError::EnumerationTooLarge(_))
        ));
        assert!(enumerate_frames_with_ceiling(2, Mode::Unimodal, 2).is_ok());
        assert!(enumerate_frames_with_ceiling(3, Mode::Unimodal, 2).is_err());
    }
}
