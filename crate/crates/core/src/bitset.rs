//! Fixed-width element sets.
//!
//! Ground elements are indexed `0..64` internally. Every set operation in the
//! hot loops (basis lookup, exchange, intersection counts) is a single word
//! operation on the backing `u64`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest ground set a [`crate::Matroid`] may have.
pub const MAX_GROUND: usize = 64;

/// A subset of `{0, .., 63}` stored as a bit vector.
///
/// The `Ord` impl is lexicographic on the increasing element sequence, so
/// `{0,1} < {0,2} < {0,3} < {1,2}` and a prefix sorts first (`{0} < {0,1}`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_GROUND);
        if n >= 64 {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(e: usize) -> Self {
        debug_assert!(e < MAX_GROUND);
        ElementSet(1u64 << e)
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, e: usize) -> bool {
        e < MAX_GROUND && self.0 & (1u64 << e) != 0
    }

    #[inline]
    pub fn with(self, e: usize) -> Self {
        ElementSet(self.0 | (1u64 << e))
    }

    #[inline]
    pub fn without(self, e: usize) -> Self {
        ElementSet(self.0 & !(1u64 << e))
    }

    /// `(self \ e) ∪ f`.
    #[inline]
    pub fn exchange(self, e: usize, f: usize) -> Self {
        self.without(e).with(f)
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    #[inline]
    pub fn symmetric_difference(self, other: Self) -> Self {
        ElementSet(self.0 ^ other.0)
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    #[inline]
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// One-based element list, as used in files and reports.
    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|e| e + 1).collect()
    }

    /// Image of the set under an element map (`map[e]` is the new index of `e`).
    pub fn map_elements(self, map: &[usize]) -> Self {
        self.iter()
            .fold(ElementSet::EMPTY, |acc, e| acc.with(map[e]))
    }

    /// All subsets of `self` with exactly `size` elements, in lexicographic order.
    pub fn subsets_of_size(self, size: usize) -> SubsetsOfSize {
        SubsetsOfSize::new(self, size)
    }

    /// All subsets of `self`, smallest first, lexicographic within a size.
    pub fn all_subsets(self) -> impl Iterator<Item = ElementSet> {
        (0..=self.len()).flat_map(move |k| self.subsets_of_size(k))
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        let low = diff.trailing_zeros();
        // Elements strictly above the first difference.
        let above = if low == 63 { 0 } else { !0u64 << (low + 1) };
        if self.0 & (1u64 << low) != 0 {
            // self has the smaller element at the first difference, unless
            // other already ended there (then other is a prefix of self).
            if other.0 & above == 0 {
                Ordering::Greater
            } else {
                Ordering::Less
            }
        } else if self.0 & above == 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(ElementSet::EMPTY, |acc, e| acc.with(e))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Displays one-based, e.g. `{1,2}`.
impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e + 1)?;
        }
        write!(f, "}}")
    }
}

/// Serialized as a sorted one-based element list, matching the file format.
impl Serialize for ElementSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter().map(|e| e + 1))
    }
}

impl<'de> Deserialize<'de> for ElementSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let elems = Vec::<usize>::deserialize(deserializer)?;
        let mut set = ElementSet::EMPTY;
        for e in elems {
            if e == 0 || e > MAX_GROUND {
                return Err(serde::de::Error::custom(format!("element {e} out of range 1..=64")));
            }
            set = set.with(e - 1);
        }
        Ok(set)
    }
}

impl IntoIterator for ElementSet {
    type Item = usize;
    type IntoIter = Elements;

    fn into_iter(self) -> Elements {
        self.iter()
    }
}

/// Increasing iterator over the elements of an [`ElementSet`].
#[derive(Clone)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Lexicographic enumeration of fixed-size subsets of a base set.
pub struct SubsetsOfSize {
    pool: Vec<usize>,
    idx: Vec<usize>,
    done: bool,
}

impl SubsetsOfSize {
    fn new(base: ElementSet, size: usize) -> Self {
        let pool = base.to_vec();
        let done = size > pool.len();
        SubsetsOfSize {
            pool,
            idx: (0..size).collect(),
            done,
        }
    }
}

impl Iterator for SubsetsOfSize {
    type Item = ElementSet;

    fn next(&mut self) -> Option<ElementSet> {
        if self.done {
            return None;
        }
        let current = self.idx.iter().map(|&i| self.pool[i]).collect();
        let k = self.idx.len();
        let n = self.pool.len();
        // advance to the next index combination
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(current)
    }
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}
