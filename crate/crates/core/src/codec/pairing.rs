//! Cantor pairing and sequence codes on arbitrary-precision naturals.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Sub};

/// A Godel code: a natural number of unbounded size.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Code(pub BigUint);

impl Code {
    pub fn zero() -> Self {
        Code(BigUint::zero())
    }

    pub fn one() -> Self {
        Code(BigUint::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_even(&self) -> bool {
        !self.0.bit(0)
    }

    /// The value as u64 if it fits, otherwise None.
    pub fn to_u64(&self) -> Option<u64> {
        let digits = self.0.to_u64_digits();
        match digits.len() {
            0 => Some(0),
            1 => Some(digits[0]),
            _ => None,
        }
    }

    pub fn to_usize(&self) -> Option<usize> {
        self.to_u64().and_then(|v| usize::try_from(v).ok())
    }
}

impl From<u64> for Code {
    fn from(v: u64) -> Self {
        Code(BigUint::from(v))
    }
}

impl From<usize> for Code {
    fn from(v: usize) -> Self {
        Code(BigUint::from(v))
    }
}

impl From<BigUint> for Code {
    fn from(v: BigUint) -> Self {
        Code(v)
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add<&Code> for &Code {
    type Output = Code;
    fn add(self, rhs: &Code) -> Code {
        Code(&self.0 + &rhs.0)
    }
}

impl Sub<&Code> for &Code {
    type Output = Code;
    fn sub(self, rhs: &Code) -> Code {
        Code(&self.0 - &rhs.0)
    }
}

/// `pair(a, b) = (a + b)(a + b + 1)/2 + b`, a bijection from pairs of
/// naturals onto the naturals.
pub fn pair(a: &Code, b: &Code) -> Code {
    let s = &a.0 + &b.0;
    let tri = (&s * (&s + 1u32)) >> 1;
    Code(tri + &b.0)
}

/// Inverse of [`pair`].
pub fn unpair(c: &Code) -> (Code, Code) {
    // s = floor((sqrt(8c + 1) - 1) / 2), the diagonal index.
    let eight_c_plus_one: BigUint = (&c.0 << 3) + 1u32;
    let mut s = (eight_c_plus_one.sqrt() - 1u32) >> 1;
    // Guard against rounding at the diagonal boundary.
    loop {
        let tri: BigUint = (&s * (&s + 1u32)) >> 1;
        if tri > c.0 {
            s -= 1u32;
            continue;
        }
        let next_tri: BigUint = (&tri + &s) + 1u32;
        if next_tri <= c.0 {
            s += 1u32;
            continue;
        }
        let b = &c.0 - tri;
        let a = &s - &b;
        return (Code(a), Code(b));
    }
}

/// `seq([]) = 0`; `seq(x : rest) = pair(x, seq(rest)) + 1`.
pub fn seq_encode(items: &[Code]) -> Code {
    let mut acc = Code::zero();
    for x in items.iter().rev() {
        let p = pair(x, &acc);
        acc = Code(p.0 + 1u32);
    }
    acc
}

/// Inverse of [`seq_encode`]; total on all naturals.
pub fn seq_decode(code: &Code) -> Vec<Code> {
    let mut items = Vec::new();
    let mut rest = code.clone();
    while !rest.is_zero() {
        let (head, tail) = unpair(&Code(&rest.0 - 1u32));
        items.push(head);
        rest = tail;
    }
    items
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: u64) -> Code {
        Code::from(v)
    }

    #[test]
    fn pair_matches_hand_computed_values() {
        assert_eq!(pair(&c(0), &c(0)), c(0));
        assert_eq!(pair(&c(1), &c(0)), c(1));
        assert_eq!(pair(&c(0), &c(1)), c(2));
        assert_eq!(pair(&c(2), &c(0)), c(3));
        assert_eq!(pair(&c(1), &c(1)), c(4));
        assert_eq!(pair(&c(0), &c(2)), c(5));
        assert_eq!(pair(&c(2), &c(1)), c(7));
    }

    #[test]
    fn pair_unpair_roundtrip_on_a_grid() {
        for a in 0..60u64 {
            for b in 0..60u64 {
                let p = pair(&c(a), &c(b));
                assert_eq!(unpair(&p), (c(a), c(b)), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn unpair_pair_roundtrip_on_a_prefix() {
        for n in 0..4000u64 {
            let (a, b) = unpair(&c(n));
            assert_eq!(pair(&a, &b), c(n), "n={n}");
        }
    }

    #[test]
    fn pair_is_injective_on_a_grid() {
        let mut seen = std::collections::BTreeSet::new();
        for a in 0..50u64 {
            for b in 0..50u64 {
                assert!(seen.insert(pair(&c(a), &c(b))), "collision at a={a} b={b}");
            }
        }
    }

    #[test]
    fn seq_codes_match_hand_computed_values() {
        assert_eq!(seq_encode(&[]), c(0));
        // seq([0]) = pair(0, 0) + 1 = 1.
        assert_eq!(seq_encode(&[c(0)]), c(1));
        // seq([0, 2]) = pair(0, pair(2, 0) + 1) + 1 = pair(0, 4) + 1 = 15.
        assert_eq!(seq_encode(&[c(0), c(2)]), c(15));
        // seq([2, 0]) = pair(2, pair(0, 0) + 1) + 1 = pair(2, 1) + 1 = 8.
        assert_eq!(seq_encode(&[c(2), c(0)]), c(8));
    }

    #[test]
    fn seq_roundtrip_on_short_sequences() {
        let samples: Vec<Vec<u64>> = vec![
            vec![],
            vec![0],
            vec![5],
            vec![0, 1, 2],
            vec![7, 0, 7],
            vec![1, 2, 3, 4, 5],
        ];
        for s in samples {
            let codes: Vec<Code> = s.iter().map(|&v| c(v)).collect();
            assert_eq!(seq_decode(&seq_encode(&codes)), codes, "seq {s:?}");
        }
    }

    #[test]
    fn seq_decode_total_on_small_naturals() {
        for n in 0..500u64 {
            let items = seq_decode(&c(n));
            assert_eq!(seq_encode(&items), c(n), "n={n}");
        }
    }

    #[test]
    fn pairing_handles_large_inputs() {
        let big = Code(BigUint::from(7u32).pow(80));
        let p = pair(&big, &c(12345));
        let (a, b) = unpair(&p);
        assert_eq!(a, big);
        assert_eq!(b, c(12345));
    }
}
