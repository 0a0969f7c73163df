//! Rank and partition results against oracles that do not use the basis
//! list: Gaussian elimination for matrices, union-find for graphs, and
//! subset enumeration for the union condition.

use matx_core::constructors::{graphic, linear_gf};
use matx_core::partition::{partition_into_bases, violating_set};
use matx_core::testing::brute_force_rank;
use matx_core::{is_k_matroid, ElementSet};
use proptest::prelude::*;

fn gf_rank(rows: &[Vec<u64>], cols: &[usize], p: u64) -> usize {
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| cols.iter().map(|&c| r[c] % p).collect()).collect();
    let inv = |a: u64| (1..p).find(|b| a * b % p == 1).unwrap();
    let mut rank = 0;
    for col in 0..cols.len() {
        let Some(pivot) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let scale = inv(m[rank][col]);
        for x in m[rank].iter_mut() {
            *x = *x * scale % p;
        }
        for i in 0..m.len() {
            if i != rank && m[i][col] != 0 {
                let f = m[i][col];
                for j in 0..cols.len() {
                    m[i][j] = (m[i][j] + p * p - f * m[rank][j]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn forest_rank(vertices: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..=vertices).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let root = find(p, p[x]);
            p[x] = root;
        }
        p[x]
    }
    let mut rank = 0;
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            rank += 1;
        }
    }
    rank
}

fn matrix(p: u64) -> impl Strategy<Value = Vec<Vec<u64>>> {
    (1usize..=3, 1usize..=7)
        .prop_flat_map(move |(r, n)| prop::collection::vec(prop::collection::vec(0..p, n), r))
        .prop_filter("nonzero", |rows| rows.iter().flatten().any(|&x| x != 0))
}

fn multigraph() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (2usize..=5).prop_flat_map(|v| {
        let edge = (1..=v, 1..=v).prop_filter("no self loops", |(a, b)| a != b);
        (Just(v), prop::collection::vec(edge, 1..=8))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matrix_rank_matches_elimination(rows in matrix(3), seed in any::<u64>()) {
        let m = linear_gf(&rows, 3).unwrap();
        let n = rows[0].len();
        let set = ElementSet::from_bits(seed & ((1u64 << n) - 1));
        prop_assert_eq!(m.rank_of(set).unwrap(), gf_rank(&rows, &set.to_vec(), 3));
        prop_assert_eq!(m.rank(), gf_rank(&rows, &(0..n).collect::<Vec<_>>(), 3));
    }

    #[test]
    fn binary_rank_matches_elimination(rows in matrix(2)) {
        let m = linear_gf(&rows, 2).unwrap();
        for set in m.ground().all_subsets() {
            prop_assert_eq!(m.rank_of(set).unwrap(), gf_rank(&rows, &set.to_vec(), 2));
        }
    }

    #[test]
    fn graphic_rank_matches_forest_size((v, edges) in multigraph()) {
        let m = graphic(v, &edges).unwrap();
        for set in m.ground().all_subsets() {
            let chosen: Vec<(usize, usize)> = set.iter().map(|i| edges[i]).collect();
            prop_assert_eq!(m.rank_of(set).unwrap(), forest_rank(v, &chosen));
            prop_assert_eq!(brute_force_rank(&m, set), forest_rank(v, &chosen));
        }
    }

    #[test]
    fn partition_agrees_with_union_condition(rows in matrix(2), k in 1usize..=4) {
        let m = linear_gf(&rows, 2).unwrap();
        let by_subsets = k * m.rank() == m.ground_size() && violating_set(&m, k).unwrap().is_none();
        prop_assert_eq!(is_k_matroid(&m, k), by_subsets);
        if let Some(p) = partition_into_bases(&m, k) {
            prop_assert!(p.is_valid_for(&m, m.ground()));
        }
    }
}
