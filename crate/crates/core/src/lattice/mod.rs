//! Downset lattices of finite chains.
//!
//! A finite chain stands in for a dense total order truncated to desk scale.
//! Its downsets under inclusion form a lattice whose structure the checks
//! here make explicit: the lattice is again a chain (no incomparable pair),
//! it is distributive, every principal downset is compact with respect to
//! finite coverings, and every downset is the union of the principal
//! downsets below it. A small non-distributive fixture is included as the
//! contrast case for the distributivity check.
//!
//! Meets and joins are computed as greatest lower and least upper bounds
//! within the element family, so fixtures that are lattices without being
//! closed under union and intersection are handled uniformly.

use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("chains need at least one element")]
    EmptyChain,
    #[error("enumeration too large: {0}")]
    EnumerationTooLarge(String),
    #[error("not a lattice: {0}")]
    NotALattice(String),
}

/// Total order 0 < 1 < ... < n-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiniteChain {
    size: usize,
}

impl FiniteChain {
    pub fn new(size: usize) -> Result<FiniteChain, LatticeError> {
        if size == 0 {
            return Err(LatticeError::EmptyChain);
        }
        Ok(FiniteChain { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// The principal downset of `q`: everything at or below it.
    pub fn principal_downset(&self, q: usize) -> BTreeSet<usize> {
        (0..=q.min(self.size - 1)).collect()
    }
}

/// A finite family of sets ordered by inclusion. Built either as the downsets
/// of a chain or from an explicit family; elements are deduplicated and
/// sorted by size, then contents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DownsetLattice {
    elements: Vec<BTreeSet<usize>>,
}

impl DownsetLattice {
    pub fn from_sets(sets: impl IntoIterator<Item = BTreeSet<usize>>) -> DownsetLattice {
        let dedup: BTreeSet<BTreeSet<usize>> = sets.into_iter().collect();
        let mut elements: Vec<BTreeSet<usize>> = dedup.into_iter().collect();
        elements.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        DownsetLattice { elements }
    }

    /// The standard five-element non-distributive diamond: bottom, three
    /// pairwise-incomparable atoms, top.
    pub fn diamond_fixture() -> DownsetLattice {
        DownsetLattice::from_sets([
            BTreeSet::new(),
            BTreeSet::from([1]),
            BTreeSet::from([2]),
            BTreeSet::from([3]),
            BTreeSet::from([1, 2, 3]),
        ])
    }

    pub fn elements(&self) -> &[BTreeSet<usize>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Greatest lower bound of the two elements within the family, by index.
    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.bound(a, b, true)
    }

    /// Least upper bound of the two elements within the family, by index.
    pub fn join(&self, a: usize, b: usize) -> Option<usize> {
        self.bound(a, b, false)
    }

    fn bound(&self, a: usize, b: usize, lower: bool) -> Option<usize> {
        let x = self.elements.get(a)?;
        let y = self.elements.get(b)?;
        let mut best: Option<usize> = None;
        for (i, candidate) in self.elements.iter().enumerate() {
            let bounds = if lower {
                candidate.is_subset(x) && candidate.is_subset(y)
            } else {
                x.is_subset(candidate) && y.is_subset(candidate)
            };
            if !bounds {
                continue;
            }
            best = match best {
                None => Some(i),
                Some(j) => {
                    let current = &self.elements[j];
                    let tighter = if lower {
                        current.is_subset(candidate)
                    } else {
                        candidate.is_subset(current)
                    };
                    if tighter {
                        Some(i)
                    } else if if lower {
                        candidate.is_subset(current)
                    } else {
                        current.is_subset(candidate)
                    } {
                        Some(j)
                    } else {
                        // two maximal lower bounds (or minimal upper bounds):
                        // no unique bound exists
                        return None;
                    }
                }
            };
        }
        best
    }
}

/// All downsets of the chain: the n+1 prefixes, sorted by size.
pub fn downset_lattice(chain: &FiniteChain) -> DownsetLattice {
    let n = chain.size();
    DownsetLattice::from_sets((0..=n).map(|k| (0..k).collect()))
}

/// Some pair of elements incomparable under inclusion, by index, or None
/// when the family is totally ordered.
pub fn exists_incomparable_pair(lat: &DownsetLattice) -> Option<(usize, usize)> {
    let elements = lat.elements();
    for i in 0..elements.len() {
        for j in i + 1..elements.len() {
            if !elements[i].is_subset(&elements[j]) && !elements[j].is_subset(&elements[i]) {
                return Some((i, j));
            }
        }
    }
    None
}

/// Cap on the element count for the cubic distributivity scan.
const DISTRIBUTIVITY_LIMIT: usize = 256;

/// Check a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c) over every triple.
pub fn check_distributive(lat: &DownsetLattice) -> Result<bool, LatticeError> {
    let n = lat.len();
    if n > DISTRIBUTIVITY_LIMIT {
        return Err(LatticeError::EnumerationTooLarge(format!(
            "{n} elements exceed the {DISTRIBUTIVITY_LIMIT}-element triple-scan cap"
        )));
    }
    let resolve = |x: Option<usize>, what: &str| {
        x.ok_or_else(|| LatticeError::NotALattice(format!("missing {what}")))
    };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let bc = resolve(lat.join(b, c), "join")?;
                let left = resolve(lat.meet(a, bc), "meet")?;
                let ab = resolve(lat.meet(a, b), "meet")?;
                let ac = resolve(lat.meet(a, c), "meet")?;
                let right = resolve(lat.join(ab, ac), "join")?;
                if left != right {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Outcome of the compactness demonstration on one chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompactnessReport {
    pub chain_size: usize,
    /// Downsets verified to equal the union of the principal downsets below
    /// them.
    pub union_decompositions: usize,
    /// (principal downset, covering family) pairs checked.
    pub coverings_checked: usize,
    /// Coverings where some single member already contained the principal
    /// downset.
    pub coverings_with_single_witness: usize,
    pub all_pass: bool,
}

/// Verify, exhaustively over the 2^(n+1) families of downsets, that every
/// principal downset covered by a union is covered by a single member, and
/// that every downset is the union of the principal downsets below it.
pub fn principal_downset_compactness_demo(chain: &FiniteChain) -> CompactnessReport {
    let lat = downset_lattice(chain);
    let elements = lat.elements();

    let mut union_decompositions = 0usize;
    let mut decompositions_ok = true;
    for d in elements {
        let rebuilt: BTreeSet<usize> = d
            .iter()
            .flat_map(|&q| chain.principal_downset(q))
            .collect();
        if rebuilt == *d {
            union_decompositions += 1;
        } else {
            decompositions_ok = false;
        }
    }

    let mut coverings_checked = 0usize;
    let mut coverings_with_single_witness = 0usize;
    for q in 0..chain.size() {
        let target = chain.principal_downset(q);
        for mask in 0u64..1 << elements.len() {
            let family: Vec<&BTreeSet<usize>> = elements
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, s)| s)
                .collect();
            let union: BTreeSet<usize> = family.iter().flat_map(|s| s.iter().copied()).collect();
            if !target.is_subset(&union) {
                continue;
            }
            coverings_checked += 1;
            if family.iter().any(|s| target.is_subset(s)) {
                coverings_with_single_witness += 1;
            }
        }
    }

    CompactnessReport {
        chain_size: chain.size(),
        union_decompositions,
        coverings_checked,
        coverings_with_single_witness,
        all_pass: decompositions_ok && coverings_checked == coverings_with_single_witness,
    }
}
