//! Standard matroid families.

use petgraph::unionfind::UnionFind;

use crate::bitset::{binomial, ElementSet, MAX_GROUND};
use crate::error::{Error, Result};
use crate::matroid::{Matroid, MAX_BASES};

/// The uniform matroid `U_{r,n}`: every `r`-subset is a basis.
pub fn uniform(rank: usize, ground_size: usize) -> Result<Matroid> {
    if ground_size > MAX_GROUND {
        return Err(Error::GroundSetTooLarge(ground_size));
    }
    if rank > ground_size {
        return Err(Error::InvalidRank { rank, ground_size });
    }
    if binomial(ground_size, rank) > MAX_BASES as u128 {
        return Err(Error::TooManyBases { limit: MAX_BASES });
    }
    let bases = ElementSet::full(ground_size).subsets_of_size(rank).collect();
    Ok(Matroid::from_trusted(ground_size, rank, bases))
}

/// Cycle matroid of a multigraph on vertices `1..=vertex_count`.
///
/// Ground elements are the edges in input order. Bases are the maximal
/// spanning forests, so the rank is `vertex_count - components`.
pub fn graphic(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Matroid> {
    if edges.is_empty() || vertex_count == 0 {
        return Err(Error::EmptyGraph);
    }
    if edges.len() > MAX_GROUND {
        return Err(Error::GroundSetTooLarge(edges.len()));
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        for v in [a, b] {
            if v == 0 || v > vertex_count {
                return Err(Error::InvalidParameter(format!(
                    "edge {} has endpoint {v} outside 1..={vertex_count}",
                    i + 1
                )));
            }
        }
    }
    let edges0: Vec<(usize, usize)> = edges.iter().map(|&(a, b)| (a - 1, b - 1)).collect();
    let mut uf = UnionFind::<usize>::new(vertex_count);
    for &(a, b) in &edges0 {
        uf.union(a, b);
    }
    let mut roots: Vec<usize> = (0..vertex_count).map(|v| uf.find(v)).collect();
    roots.sort_unstable();
    roots.dedup();
    let rank = vertex_count - roots.len();
    if binomial(edges.len(), rank) > MAX_BASES as u128 * 8 {
        return Err(Error::TooManyBases { limit: MAX_BASES });
    }
    let bases: Vec<ElementSet> = ElementSet::full(edges.len())
        .subsets_of_size(rank)
        .filter(|s| is_forest(vertex_count, &edges0, *s))
        .collect();
    if bases.len() > MAX_BASES {
        return Err(Error::TooManyBases { limit: MAX_BASES });
    }
    Ok(Matroid::from_trusted(edges.len(), rank, bases))
}

fn is_forest(vertex_count: usize, edges: &[(usize, usize)], chosen: ElementSet) -> bool {
    let mut uf = UnionFind::<usize>::new(vertex_count);
    chosen.iter().all(|i| {
        let (a, b) = edges[i];
        uf.union(a, b)
    })
}

/// Column matroid of a matrix over `GF(p)`.
///
/// Entries are reduced mod `p`; bases are the maximal independent column
/// sets, so the rank is the rank of the matrix.
pub fn linear_gf(rows: &[Vec<u64>], p: u64) -> Result<Matroid> {
    if !is_prime(p) {
        return Err(Error::NonPrimeModulus(p));
    }
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::RaggedMatrix);
    }
    if cols == 0 {
        return Err(Error::InvalidParameter("matrix has no columns".into()));
    }
    if cols > MAX_GROUND {
        return Err(Error::GroundSetTooLarge(cols));
    }
    let columns: Vec<Vec<u64>> = (0..cols)
        .map(|j| rows.iter().map(|r| r[j] % p).collect())
        .collect();
    let all = ElementSet::full(cols);
    let rank = gf_rank(&columns, all, p);
    if binomial(cols, rank) > MAX_BASES as u128 * 8 {
        return Err(Error::TooManyBases { limit: MAX_BASES });
    }
    let bases: Vec<ElementSet> = all
        .subsets_of_size(rank)
        .filter(|s| gf_rank(&columns, *s, p) == rank)
        .collect();
    if bases.len() > MAX_BASES {
        return Err(Error::TooManyBases { limit: MAX_BASES });
    }
    Ok(Matroid::from_trusted(cols, rank, bases))
}

/// Rank of the selected columns over `GF(p)` by Gaussian elimination.
pub(crate) fn gf_rank(columns: &[Vec<u64>], selected: ElementSet, p: u64) -> usize {
    let mut vecs: Vec<Vec<u64>> = selected.iter().map(|j| columns[j].clone()).collect();
    let dim = columns.first().map_or(0, Vec::len);
    let mut rank = 0;
    for row in 0..dim {
        let Some(pivot) = (rank..vecs.len()).find(|&i| vecs[i][row] != 0) else {
            continue;
        };
        vecs.swap(rank, pivot);
        let inv = mod_pow(vecs[rank][row], p - 2, p);
        for x in vecs[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_vec = vecs[rank].clone();
        for (i, v) in vecs.iter_mut().enumerate() {
            if i != rank && v[row] != 0 {
                let factor = v[row];
                for (x, y) in v.iter_mut().zip(&pivot_vec) {
                    *x = (*x + p - factor * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Truncation to rank `rank`: bases are the independent sets of that size.
pub fn truncation(m: &Matroid, rank: usize) -> Result<Matroid> {
    if rank > m.rank() {
        return Err(Error::InvalidRank {
            rank,
            ground_size: m.ground_size(),
        });
    }
    let mut bases: Vec<ElementSet> = m
        .bases()
        .iter()
        .flat_map(|b| b.subsets_of_size(rank))
        .collect();
    bases.sort_unstable();
    bases.dedup();
    Ok(Matroid::from_trusted(m.ground_size(), rank, bases))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{set1, u};

    const K4: [(usize, usize); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

    #[test]
    fn uniform_counts() {
        assert_eq!(uniform(2, 4).unwrap().basis_count(), 6);
        assert_eq!(uniform(0, 3).unwrap().bases(), &[ElementSet::EMPTY]);
        assert_eq!(
            uniform(5, 4).unwrap_err(),
            Error::InvalidRank {
                rank: 5,
                ground_size: 4
            }
        );
        assert_eq!(uniform(1, 70).unwrap_err(), Error::GroundSetTooLarge(70));
        assert!(matches!(uniform(32, 64), Err(Error::TooManyBases { .. })));
    }

    #[test]
    fn k4_has_sixteen_spanning_trees() {
        let m = graphic(4, &K4).unwrap();
        assert_eq!(m.rank(), 3);
        assert_eq!(m.basis_count(), 16);
    }

    #[test]
    fn graphic_loops_parallels_and_forests() {
        // loop on vertex 1, a double edge 1-2, and a separate component 3-4
        let m = graphic(4, &[(1, 1), (1, 2), (1, 2), (3, 4)]).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.loops(), set1(&[1]));
        assert_eq!(m.bases(), &[set1(&[2, 4]), set1(&[3, 4])]);
        assert_eq!(graphic(3, &[]).unwrap_err(), Error::EmptyGraph);
        assert!(matches!(graphic(2, &[(1, 3)]), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn linear_examples() {
        let m = linear_gf(&[vec![1, 0, 1], vec![0, 1, 1]], 2).unwrap();
        assert_eq!(m, u(2, 3));
        // over GF(3) the columns e1, e2, e1+e2, e1-e2 are pairwise independent
        let m = linear_gf(&[vec![1, 0, 1, 1], vec![0, 1, 1, 2]], 3).unwrap();
        assert_eq!(m, u(2, 4));
        // the same columns over GF(2) make 4 parallel to 3
        let m = linear_gf(&[vec![1, 0, 1, 1], vec![0, 1, 1, 0]], 2).unwrap();
        assert_eq!(m.rank_of(set1(&[1, 4])).unwrap(), 1);
        assert_eq!(linear_gf(&[vec![1]], 4).unwrap_err(), Error::NonPrimeModulus(4));
        assert_eq!(
            linear_gf(&[vec![1, 0], vec![1]], 2).unwrap_err(),
            Error::RaggedMatrix
        );
    }

    #[test]
    fn fano_plane_has_28_bases() {
        // all nonzero vectors of GF(2)^3
        let rows = vec![
            vec![1, 0, 0, 1, 1, 0, 1],
            vec![0, 1, 0, 1, 0, 1, 1],
            vec![0, 0, 1, 0, 1, 1, 1],
        ];
        let fano = linear_gf(&rows, 2).unwrap();
        assert_eq!(fano.basis_count(), 35 - 7);
    }

    #[test]
    fn truncation_of_k4() {
        let t = truncation(&graphic(4, &K4).unwrap(), 2).unwrap();
        assert_eq!(t, u(2, 6));
    }
}
