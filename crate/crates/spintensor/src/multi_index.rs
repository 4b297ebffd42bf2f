//! Canonical multi-indices (mu_1, ..., mu_N) with entries in {0,1,2,3}.
//!
//! The covariant matrices and coordinate tensors are invariant under index
//! permutation, so only sorted index strings are stored, each weighted by the
//! number of distinct permutations. The canonical enumeration is lexicographic
//! on the sorted string; its length is C(N+3, 3).

use std::collections::HashMap;
use std::fmt;

use crate::comb::multinomial;
use crate::error::{Error, Result};

/// A sorted multi-index of fixed rank with entries 0..=3.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    indices: Vec<u8>,
}

impl MultiIndex {
    /// Builds a canonical multi-index from entries in any order.
    pub fn new(indices: impl Into<Vec<u8>>) -> Result<Self> {
        let mut indices = indices.into();
        if let Some(&bad) = indices.iter().find(|&&v| v > 3) {
            return Err(Error::IndexEntryOutOfRange(bad));
        }
        indices.sort_unstable();
        Ok(Self { indices })
    }

    /// From occurrence counts (p0, p1, p2, p3).
    pub fn from_counts(counts: [usize; 4]) -> Self {
        let mut indices = Vec::with_capacity(counts.iter().sum());
        for (value, &count) in counts.iter().enumerate() {
            indices.extend(std::iter::repeat(value as u8).take(count));
        }
        Self { indices }
    }

    pub fn rank(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[u8] {
        &self.indices
    }

    /// Occurrence counts of each value 0..=3.
    pub fn counts(&self) -> [usize; 4] {
        let mut counts = [0usize; 4];
        for &v in &self.indices {
            counts[v as usize] += 1;
        }
        counts
    }

    /// Number of distinct permutations, N! / (p0! p1! p2! p3!).
    pub fn multiplicity(&self) -> u64 {
        let counts = self.counts();
        multinomial(&counts.map(|c| c as u32)) as u64
    }

    /// The same index padded with zeros up to `rank` (canonical form keeps
    /// the zeros in front).
    pub fn padded_to(&self, rank: usize) -> Result<Self> {
        if rank < self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                got: rank,
            });
        }
        let mut counts = self.counts();
        counts[0] += rank - self.rank();
        Ok(Self::from_counts(counts))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &v in &self.indices {
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// The full canonical enumeration for a given rank, with position lookup.
#[derive(Clone, Debug)]
pub struct CanonicalIndices {
    rank: usize,
    list: Vec<MultiIndex>,
    position: HashMap<[usize; 4], usize>,
}

impl CanonicalIndices {
    pub fn new(rank: usize) -> Self {
        let mut list = Vec::new();
        for p0 in (0..=rank).rev() {
            for p1 in (0..=rank - p0).rev() {
                for p2 in (0..=rank - p0 - p1).rev() {
                    let p3 = rank - p0 - p1 - p2;
                    list.push(MultiIndex::from_counts([p0, p1, p2, p3]));
                }
            }
        }
        let position = list
            .iter()
            .enumerate()
            .map(|(i, idx)| (idx.counts(), i))
            .collect();
        Self {
            rank,
            list,
            position,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &MultiIndex> {
        self.list.iter()
    }

    pub fn get(&self, position: usize) -> &MultiIndex {
        &self.list[position]
    }

    pub fn position(&self, idx: &MultiIndex) -> Result<usize> {
        if idx.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: idx.rank(),
            });
        }
        Ok(self.position[&idx.counts()])
    }

    pub fn position_of_counts(&self, counts: [usize; 4]) -> usize {
        self.position[&counts]
    }
}
