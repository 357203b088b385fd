//! Ground sets and bit-indicator subsets.
//!
//! Element `i` (zero-based) of a ground set is bit `i` of a [`Subset`]. All
//! desk-scale instances fit in a single machine word, so ground sets are
//! capped at [`MAX_ELEMENTS`] elements.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Result};

pub const MAX_ELEMENTS: usize = 64;

/// A subset of a ground set of at most 64 elements.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The full ground set `{0, .., n-1}`.
    #[inline]
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    #[inline]
    pub const fn singleton(i: usize) -> Self {
        Subset(1u64 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices
            .into_iter()
            .fold(Subset::EMPTY, |acc, i| acc.with(i))
    }

    /// Builds a subset from one-based element numbers, as used in documents
    /// and in `e_1, .., e_n` notation.
    pub fn from_one_based<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        Subset::from_indices(indices.into_iter().map(|i| i - 1))
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, i: usize) -> bool {
        (self.0 >> i) & 1 == 1
    }

    #[inline]
    pub const fn with(self, i: usize) -> Self {
        Subset(self.0 | (1u64 << i))
    }

    #[inline]
    pub const fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1u64 << i))
    }

    #[inline]
    pub const fn complement(self, n: usize) -> Self {
        Subset(!self.0 & Subset::full(n).0)
    }

    #[inline]
    pub const fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub const fn intersects(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    /// Smallest element, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> SubsetIter {
        SubsetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    /// Canonical order: by cardinality, then lexicographically on the sorted
    /// element lists.
    pub fn canonical_cmp(&self, other: &Subset) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            // For equal sizes the first differing element decides.
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.contains(diff.trailing_zeros() as usize) {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(Subset(cur))
        })
    }
}

/// `sigma(n, i, j)`: the elements `e_i, e_{i+1}, .., e_j` of the natural
/// cyclic order on `[n]`, with one-based positions taken mod `n`. When
/// `i > j` the interval wraps around.
pub fn sigma(n: usize, i: i64, j: i64) -> Subset {
    let len = (j - i).rem_euclid(n as i64) as usize + 1;
    window(n, i, len)
}

/// The `len` consecutive elements starting at one-based position `i`
/// (mod `n`). Lengths of `n` or more give the whole ground set.
pub fn window(n: usize, i: i64, len: usize) -> Subset {
    if len >= n {
        return Subset::full(n);
    }
    let start = (i - 1).rem_euclid(n as i64) as usize;
    let run = Subset::full(len).bits();
    let end = start + len;
    if end <= n {
        Subset(run << start)
    } else {
        let high = Subset::full(n - start).bits() << start;
        Subset(high | Subset::full(end - n).bits())
    }
}

/// Reduces a one-based position to `1..=n`.
#[inline]
pub fn wrap(n: usize, i: i64) -> usize {
    (i - 1).rem_euclid(n as i64) as usize + 1
}

pub struct SubsetIter(u64);

impl Iterator for SubsetIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for SubsetIter {}

impl BitOr for Subset {
    type Output = Subset;
    #[inline]
    fn bitor(self, rhs: Subset) -> Subset {
        Subset(self.0 | rhs.0)
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    #[inline]
    fn bitand(self, rhs: Subset) -> Subset {
        Subset(self.0 & rhs.0)
    }
}

impl BitXor for Subset {
    type Output = Subset;
    #[inline]
    fn bitxor(self, rhs: Subset) -> Subset {
        Subset(self.0 ^ rhs.0)
    }
}

impl Sub for Subset {
    type Output = Subset;
    #[inline]
    fn sub(self, rhs: Subset) -> Subset {
        Subset(self.0 & !rhs.0)
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Subset::from_indices(iter)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "e{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

// Subsets cross the serialization boundary as sorted one-based index lists.
impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_one_based().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<usize>::deserialize(deserializer)?;
        let mut set = Subset::EMPTY;
        for i in raw {
            if i == 0 || i > MAX_ELEMENTS {
                return Err(serde::de::Error::custom(format!(
                    "element index {i} outside 1..={MAX_ELEMENTS}"
                )));
            }
            set = set.with(i - 1);
        }
        Ok(set)
    }
}

/// Elements `e_1, .., e_n` with display labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
}

impl GroundSet {
    /// Ground set with default labels `e1, .., en`.
    pub fn new(n: usize) -> Result<Self> {
        GroundSet::with_labels((1..=n).map(|i| format!("e{i}")).collect())
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        if labels.is_empty() {
            return Err(invalid("ground set must have at least one element"));
        }
        if labels.len() > MAX_ELEMENTS {
            return Err(invalid(format!(
                "ground set of {} elements exceeds {MAX_ELEMENTS}",
                labels.len()
            )));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(invalid(format!("duplicate element label {l:?}")));
            }
        }
        Ok(GroundSet { labels })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn format(&self, set: Subset) -> String {
        let names: Vec<&str> = set.iter().map(|i| self.label(i)).collect();
        format!("{{{}}}", names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_algebra() {
        let a = Subset::from_one_based([1, 2, 3]);
        let b = Subset::from_one_based([3, 4, 5]);
        assert_eq!((a & b), Subset::from_one_based([3]));
        assert_eq!((a | b).len(), 5);
        assert_eq!(a - b, Subset::from_one_based([1, 2]));
        assert_eq!(a.complement(6), Subset::from_one_based([4, 5, 6]));
        assert!(Subset::EMPTY.is_subset_of(a));
        assert_eq!(a.to_one_based(), vec![1, 2, 3]);
        assert_eq!(Subset::full(64).len(), 64);
    }

    #[test]
    fn canonical_order_is_size_then_lex() {
        let mut sets = [Subset::from_one_based([2, 3]),
            Subset::from_one_based([1, 2, 3]),
            Subset::from_one_based([1, 4]),
            Subset::from_one_based([1, 3])];
        sets.sort_by(Subset::canonical_cmp);
        let got: Vec<_> = sets.iter().map(|s| s.to_one_based()).collect();
        assert_eq!(got, vec![vec![1, 3], vec![1, 4], vec![2, 3], vec![1, 2, 3]]);
    }

    #[test]
    fn subsets_enumerates_power_set() {
        let s = Subset::from_one_based([2, 5, 7]);
        let all: Vec<_> = s.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|x| x.is_subset_of(s)));
        let uniq: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(uniq.len(), 8);
    }

    #[test]
    fn cyclic_intervals_wrap() {
        assert_eq!(sigma(8, 7, 2), Subset::from_one_based([7, 8, 1, 2]));
        assert_eq!(sigma(8, 3, 3), Subset::from_one_based([3]));
        assert_eq!(sigma(12, 1, 5), Subset::from_one_based(1..=5));
        assert_eq!(sigma(8, -1, 1), Subset::from_one_based([7, 8, 1]));
        assert_eq!(window(8, 9, 3), Subset::from_one_based([1, 2, 3]));
        assert_eq!(window(8, 4, 0), Subset::EMPTY);
        assert_eq!(window(8, 4, 8), Subset::full(8));
        assert_eq!(wrap(8, 0), 8);
        assert_eq!(wrap(8, 17), 1);
    }

    #[test]
    fn ground_set_rejects_duplicates_and_empty() {
        assert!(GroundSet::new(0).is_err());
        assert!(GroundSet::with_labels(vec!["a".into(), "a".into()]).is_err());
        assert!(GroundSet::new(65).is_err());
        let g = GroundSet::new(3).unwrap();
        assert_eq!(g.label(2), "e3");
        assert_eq!(g.index_of("e2"), Some(1));
    }

    proptest! {
        #[test]
        fn complement_is_involutive(bits in any::<u64>(), n in 1usize..=64) {
            let x = Subset::from_bits(bits) & Subset::full(n);
            prop_assert_eq!(x.complement(n).complement(n), x);
            prop_assert_eq!(x.len() + x.complement(n).len(), n);
        }

        #[test]
        fn sigma_has_expected_size(n in 1usize..=64, i in -100i64..100, j in -100i64..100) {
            let expected = (j - i).rem_euclid(n as i64) as usize + 1;
            prop_assert_eq!(sigma(n, i, j).len(), expected);
            prop_assert!(sigma(n, i, j).contains(wrap(n, i) - 1));
            prop_assert!(sigma(n, i, j).contains(wrap(n, j) - 1));
        }

        #[test]
        fn union_intersection_laws(a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
            let (a, b, c) = (Subset::from_bits(a), Subset::from_bits(b), Subset::from_bits(c));
            prop_assert_eq!(a | b, b | a);
            prop_assert_eq!(a & b, b & a);
            prop_assert_eq!((a | b) | c, a | (b | c));
            prop_assert_eq!((a & b) & c, a & (b & c));
            prop_assert_eq!((a | b).len() + (a & b).len(), a.len() + b.len());
        }
    }
}
