//! Strictly increasing index sets, stored as bitmasks.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 64;

/// A strictly increasing subset of `{1, ..., n}`; bit `i - 1` set means index `i` present.
///
/// Ordered lexicographically on the sorted index list, so `{1,2} < {1,3} < {2,3}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct MultiIndex(u64);

impl MultiIndex {
    pub const EMPTY: MultiIndex = MultiIndex(0);

    /// Build from 1-based indices; they must be strictly increasing and at most `dim`.
    pub fn new(indices: &[usize], dim: usize) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::DimensionTooLarge(dim));
        }
        let mut mask = 0u64;
        let mut last = 0usize;
        for &i in indices {
            if i <= last {
                return Err(Error::NotIncreasing(indices.to_vec()));
            }
            if i > dim {
                return Err(Error::IndexOutOfRange { index: i, dim });
            }
            mask |= 1u64 << (i - 1);
            last = i;
        }
        Ok(MultiIndex(mask))
    }

    pub const fn from_mask(mask: u64) -> Self {
        MultiIndex(mask)
    }

    pub const fn single(i: usize) -> Self {
        MultiIndex(1u64 << (i - 1))
    }

    pub const fn mask(self) -> u64 {
        self.0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, i: usize) -> bool {
        i >= 1 && i <= MAX_DIM && self.0 & (1u64 << (i - 1)) != 0
    }

    /// Largest index, or 0 when empty.
    pub const fn max_index(self) -> usize {
        MAX_DIM - self.0.leading_zeros() as usize
    }

    /// 1-based indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let b = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(b + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.indices().collect()
    }

    /// Sign of `α_self ∧ α_other` relative to the sorted union; `None` when they overlap.
    pub fn wedge_sign(self, other: MultiIndex) -> Option<(MultiIndex, i64)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0u32;
        let mut b = other.0;
        while b != 0 {
            let j = b.trailing_zeros();
            b &= b - 1;
            // elements of self larger than j must pass over it
            swaps += (self.0 >> j).count_ones();
        }
        let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        Some((MultiIndex(self.0 | other.0), sign))
    }

    /// Number of elements strictly below index `i`.
    pub const fn position_of(self, i: usize) -> usize {
        (self.0 & ((1u64 << (i - 1)) - 1)).count_ones() as usize
    }

    pub const fn without(self, i: usize) -> Self {
        MultiIndex(self.0 & !(1u64 << (i - 1)))
    }

    /// All `k`-subsets of `{1..n}` in lexicographic order.
    pub fn combinations(n: usize, k: usize) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        if k > n {
            return out;
        }
        let mut idx: Vec<usize> = (1..=k).collect();
        loop {
            out.push(MultiIndex(idx.iter().fold(0u64, |m, &i| m | 1u64 << (i - 1))));
            let mut pos = k;
            while pos > 0 && idx[pos - 1] == n - k + pos {
                pos -= 1;
            }
            if pos == 0 {
                return out;
            }
            idx[pos - 1] += 1;
            for q in pos..k {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let d = diff.trailing_zeros();
        let (mine, theirs) = (self.0, other.0);
        if mine & (1u64 << d) != 0 {
            // the other list has either ended (it is a prefix) or continues with a larger entry
            if theirs >> d == 0 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        } else if mine >> d == 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.indices().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}
