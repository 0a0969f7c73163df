//! Small named matroids and helpers shared by unit and integration tests.

use crate::bitset::ElementSet;
use crate::constructors;
use crate::matroid::Matroid;

/// Builds a set from one-based element labels.
pub fn set1(elems: &[usize]) -> ElementSet {
    elems.iter().map(|&e| e - 1).collect()
}

/// Parses a one-based state such as `"12|34"` (single-digit labels) or
/// `"1 2|3 4"`.
pub fn state1(text: &str) -> Vec<ElementSet> {
    text.split('|')
        .map(|part| {
            let part = part.trim();
            if part.contains(' ') || part.contains(',') {
                part.split([' ', ','])
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<usize>().unwrap() - 1)
                    .collect()
            } else {
                part.chars()
                    .map(|c| c.to_digit(10).unwrap() as usize - 1)
                    .collect()
            }
        })
        .collect()
}

pub fn u(rank: usize, n: usize) -> Matroid {
    constructors::uniform(rank, n).unwrap()
}

/// Rank 2 on `{1,2,3,4}` with 3 and 4 parallel: bases 12 13 14 23 24.
pub fn five_basis() -> Matroid {
    Matroid::validate_bases(
        4,
        [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4]].map(|b| set1(&b)),
    )
    .unwrap()
}

/// Rank 2 on `{1,2,3,4}` with 1, 2, 3 mutually parallel: bases 14 24 34.
pub fn three_parallel() -> Matroid {
    Matroid::validate_bases(4, [[1, 4], [2, 4], [3, 4]].map(|b| set1(&b))).unwrap()
}

pub fn k4() -> Matroid {
    constructors::graphic(4, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap()
}

/// Independent-set oracle: size of the largest subset of `set` contained in
/// some basis, found by trying every subset.
pub fn brute_force_rank(m: &Matroid, set: ElementSet) -> usize {
    set.all_subsets()
        .filter(|s| m.bases().iter().any(|b| s.is_subset(*b)))
        .map(|s| s.len())
        .max()
        .unwrap_or(0)
}
