//! Partitioning a ground set into disjoint bases.
//!
//! Two independent routes answer "is `M` a k-matroid": the augmenting-path
//! matroid-partition search ([`partition_into_bases`]) and the exhaustive
//! rank inequality `k·r(A) ≥ |A|` over all subsets ([`violating_set`]).

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::matroid::Matroid;

/// Default ground-set cap for the exhaustive subset scan.
pub const EXHAUSTIVE_CAP: usize = 20;

/// An ordered tuple of pairwise disjoint bases covering the ground set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasePartition {
    pub blocks: Vec<ElementSet>,
}

impl BasePartition {
    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    /// Blocks sorted, i.e. the partition as an unordered set of bases.
    pub fn canonical(&self) -> BasePartition {
        let mut blocks = self.blocks.clone();
        blocks.sort_unstable();
        BasePartition { blocks }
    }

    /// Checks disjointness, coverage of `ground` and that every block is a basis.
    pub fn is_valid_for(&self, m: &Matroid, ground: ElementSet) -> bool {
        let mut seen = ElementSet::EMPTY;
        for &b in &self.blocks {
            if !m.is_basis(b) || !b.is_disjoint(seen) {
                return false;
            }
            seen = seen.union(b);
        }
        seen == ground
    }
}

/// A subset `A` with `k·r(A) < |A|`, certifying that no partition exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionViolation {
    pub set: ElementSet,
    pub k: usize,
    pub rank: usize,
}

/// Partitions the whole ground set into `k` bases, if possible.
pub fn partition_into_bases(m: &Matroid, k: usize) -> Option<BasePartition> {
    partition_set_into_bases(m, m.ground(), k)
}

/// Partitions `ground` (a subset of `E`) into `k` bases of `m`.
///
/// Classical matroid partitioning: elements are inserted in increasing order,
/// each along a shortest augmenting path in the exchange digraph of the
/// current `k` independent sets. Ties go to the lowest element and the lowest
/// block, so the output is deterministic.
pub fn partition_set_into_bases(m: &Matroid, ground: ElementSet, k: usize) -> Option<BasePartition> {
    if k * m.rank() != ground.len() {
        return None;
    }
    if k == 0 || m.rank() == 0 {
        return Some(BasePartition {
            blocks: vec![ElementSet::EMPTY; k],
        });
    }
    let mut blocks = vec![ElementSet::EMPTY; k];
    let mut owner: [Option<usize>; 64] = [None; 64];
    for x in ground {
        if !augment(m, &mut blocks, &mut owner, x) {
            return None;
        }
    }
    debug_assert!(blocks.iter().all(|b| m.is_basis(*b)));
    Some(BasePartition { blocks })
}

fn augment(m: &Matroid, blocks: &mut [ElementSet], owner: &mut [Option<usize>; 64], x: usize) -> bool {
    let mut parent: [usize; 64] = [usize::MAX; 64];
    let mut visited = ElementSet::singleton(x);
    let mut queue = VecDeque::from([x]);
    while let Some(z) = queue.pop_front() {
        for i in 0..blocks.len() {
            if owner[z] == Some(i) {
                continue;
            }
            if m.is_independent(blocks[i].with(z)) {
                apply_path(blocks, owner, &parent, x, z, i);
                return true;
            }
        }
        for i in 0..blocks.len() {
            if owner[z] == Some(i) {
                continue;
            }
            for y in blocks[i].difference(visited) {
                if m.is_independent(blocks[i].without(y).with(z)) {
                    visited = visited.with(y);
                    parent[y] = z;
                    queue.push_back(y);
                }
            }
        }
    }
    false
}

fn apply_path(
    blocks: &mut [ElementSet],
    owner: &mut [Option<usize>; 64],
    parent: &[usize; 64],
    start: usize,
    end: usize,
    end_block: usize,
) {
    let mut cur = end;
    let mut target = end_block;
    loop {
        let previous = owner[cur];
        if let Some(j) = previous {
            blocks[j] = blocks[j].without(cur);
        }
        blocks[target] = blocks[target].with(cur);
        owner[cur] = Some(target);
        if cur == start {
            break;
        }
        target = previous.expect("interior path vertices belong to a block");
        cur = parent[cur];
    }
}

/// Smallest (then lexicographically first) `A ⊆ E` with `k·r(A) < |A|`.
pub fn violating_set(m: &Matroid, k: usize) -> Result<Option<UnionViolation>> {
    violating_set_capped(m, k, EXHAUSTIVE_CAP)
}

pub fn violating_set_capped(m: &Matroid, k: usize, cap: usize) -> Result<Option<UnionViolation>> {
    if m.ground_size() > cap {
        return Err(Error::CapExceeded {
            size: m.ground_size(),
            cap,
        });
    }
    Ok(m.ground().all_subsets().skip(1).find_map(|set| {
        let rank = m.rank_unchecked(set);
        (k * rank < set.len()).then_some(UnionViolation { set, k, rank })
    }))
}

/// Whether `E` splits into `k` disjoint bases.
pub fn is_k_matroid(m: &Matroid, k: usize) -> bool {
    k >= 1
        && k * m.rank() == m.ground_size()
        && m.loops().is_empty()
        && partition_into_bases(m, k).is_some()
}

/// Whether the complement of basis `b` splits into `k - 1` disjoint bases.
pub fn is_complementary(m: &Matroid, b: ElementSet, k: usize) -> Result<bool> {
    if !m.is_basis(b) {
        return Err(Error::NotABasis(b));
    }
    if !is_k_matroid(m, k) {
        return Err(Error::NotKMatroid { k });
    }
    Ok(complement_partition(m, b, k).is_some())
}

/// A partition of `E \ b` into `k - 1` bases (assumes `m` is a k-matroid).
pub fn complement_partition(m: &Matroid, b: ElementSet, k: usize) -> Option<BasePartition> {
    partition_set_into_bases(m, m.ground().difference(b), k.saturating_sub(1))
}

/// All complementary bases of a k-matroid, in canonical order.
pub fn complementary_bases(m: &Matroid, k: usize) -> Result<Vec<ElementSet>> {
    if !is_k_matroid(m, k) {
        return Err(Error::NotKMatroid { k });
    }
    Ok(m.bases()
        .iter()
        .copied()
        .filter(|&b| complement_partition(m, b, k).is_some())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{five_basis, k4, set1, three_parallel, u};

    /// Exhaustive partition search: the block holding the smallest uncovered
    /// element is tried against every basis.
    fn exhaustive_partition(m: &Matroid, rest: ElementSet, k: usize) -> bool {
        if k == 0 {
            return rest.is_empty();
        }
        let Some(x) = rest.first() else {
            return m.rank() == 0;
        };
        m.bases()
            .iter()
            .filter(|b| b.contains(x) && b.is_subset(rest))
            .any(|b| exhaustive_partition(m, rest.difference(*b), k - 1))
    }

    #[test]
    fn k_matroid_examples() {
        assert!(is_k_matroid(&u(2, 4), 2));
        assert!(!is_k_matroid(&u(2, 5), 2));
        assert!(!is_k_matroid(&three_parallel(), 2));
        assert!(is_k_matroid(&u(1, 3), 3));
        assert!(!is_k_matroid(&u(2, 4), 0));
    }

    #[test]
    fn partition_examples() {
        assert_eq!(
            partition_into_bases(&u(2, 4), 2).unwrap().blocks,
            vec![set1(&[1, 2]), set1(&[3, 4])]
        );
        let k4 = k4();
        let p = partition_into_bases(&k4, 2).unwrap();
        assert!(p.is_valid_for(&k4, k4.ground()));
        assert_eq!(partition_into_bases(&three_parallel(), 2), None);
    }

    #[test]
    fn partition_is_deterministic() {
        let m = u(3, 9);
        let a = partition_into_bases(&m, 3).unwrap();
        for _ in 0..5 {
            assert_eq!(partition_into_bases(&m, 3).unwrap(), a);
        }
        assert!(a.is_valid_for(&m, m.ground()));
    }

    #[test]
    fn violating_set_examples() {
        assert_eq!(violating_set(&u(2, 4), 2).unwrap(), None);
        assert_eq!(
            violating_set(&three_parallel(), 2).unwrap(),
            Some(UnionViolation {
                set: set1(&[1, 2, 3]),
                k: 2,
                rank: 1
            })
        );
        let with_loop = Matroid::validate_bases(4, [set1(&[1, 2]), set1(&[1, 4]), set1(&[2, 4])]).unwrap();
        for k in 1..4 {
            assert_eq!(violating_set(&with_loop, k).unwrap().unwrap().set, set1(&[3]));
        }
        assert!(matches!(
            violating_set(&u(1, 21), 21),
            Err(Error::CapExceeded { size: 21, cap: 20 })
        ));
    }

    #[test]
    fn complementary_examples() {
        assert!(is_complementary(&u(2, 4), set1(&[1, 3]), 2).unwrap());
        let fb = five_basis();
        assert!(!is_complementary(&fb, set1(&[1, 2]), 2).unwrap());
        assert!(is_complementary(&fb, set1(&[1, 3]), 2).unwrap());
        assert_eq!(
            is_complementary(&fb, set1(&[3, 4]), 2).unwrap_err(),
            Error::NotABasis(set1(&[3, 4]))
        );
        assert_eq!(
            is_complementary(&u(2, 5), set1(&[1, 2]), 2).unwrap_err(),
            Error::NotKMatroid { k: 2 }
        );
        // k = 1: the complement is empty
        assert!(is_complementary(&u(3, 3), set1(&[1, 2, 3]), 1).unwrap());
    }

    #[test]
    fn blocks_of_a_partition_are_complementary() {
        let m = k4();
        let p = partition_into_bases(&m, 2).unwrap();
        for b in p.blocks {
            assert!(is_complementary(&m, b, 2).unwrap());
        }
    }

    #[test]
    fn agrees_with_exhaustive_search_on_small_families() {
        let family = [
            u(2, 4),
            u(2, 6),
            u(3, 6),
            u(1, 4),
            five_basis(),
            three_parallel(),
            k4(),
            u(2, 3).blow_up(ElementSet::full(3), 2).unwrap().0,
            five_basis().blow_up(set1(&[1]), 3).unwrap().0,
        ];
        for m in &family {
            for k in 1..=4 {
                let fast = partition_into_bases(m, k).is_some();
                let slow = exhaustive_partition(m, m.ground(), k);
                assert_eq!(fast, slow, "{m:?} k={k}");
                let by_rank = violating_set(m, k).unwrap().is_none() && k * m.rank() == m.ground_size();
                assert_eq!(is_k_matroid(m, k), by_rank, "{m:?} k={k}");
            }
        }
    }
}
