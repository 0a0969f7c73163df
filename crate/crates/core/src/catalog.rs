//! Catalogs of small matroids: every matroid of a given rank on at most six
//! elements up to isomorphism, or a constructed list of standard families.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::bitset::{binomial, ElementSet};
use crate::constructors::{graphic, linear_gf, truncation, uniform};
use crate::error::{Error, Result};
use crate::matroid::Matroid;

/// Exhaustive enumeration is limited to this many ground elements.
pub const EXHAUSTIVE_MAX_N: usize = 6;
/// Canonical forms by permutation are computed up to this ground size.
pub const CANONICAL_MAX_N: usize = 8;
pub const CONSTRUCTED_MAX_N: usize = 12;
/// Largest vertex count for generated graphs.
pub const GRAPH_MAX_VERTICES: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogMode {
    Exhaustive,
    Constructed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogSpec {
    pub mode: CatalogMode,
    pub rank: usize,
    /// Smallest ground size; defaults to `max(rank, 1)`.
    #[serde(default)]
    pub n_min: Option<usize>,
    pub n_max: usize,
    /// Constructed mode only: drop isomorphic duplicates (ground size up to 8).
    #[serde(default)]
    pub dedup: bool,
}

impl CatalogSpec {
    pub fn exhaustive(rank: usize, n_max: usize) -> Self {
        CatalogSpec {
            mode: CatalogMode::Exhaustive,
            rank,
            n_min: None,
            n_max,
            dedup: true,
        }
    }

    pub fn constructed(rank: usize, n_max: usize) -> Self {
        CatalogSpec {
            mode: CatalogMode::Constructed,
            rank,
            n_min: None,
            n_max,
            dedup: true,
        }
    }

    pub fn with_n_min(mut self, n_min: usize) -> Self {
        self.n_min = Some(n_min);
        self
    }

    fn n_range(&self) -> std::ops::RangeInclusive<usize> {
        self.n_min.unwrap_or(self.rank.max(1)).max(self.rank)..=self.n_max
    }
}

/// Named catalog entries in a deterministic order.
pub fn catalog_generate(spec: &CatalogSpec) -> Result<Vec<(String, Matroid)>> {
    match spec.mode {
        CatalogMode::Exhaustive => {
            if spec.n_max > EXHAUSTIVE_MAX_N {
                return Err(Error::CatalogCapExceeded(format!(
                    "exhaustive mode allows at most {EXHAUSTIVE_MAX_N} elements, got {}",
                    spec.n_max
                )));
            }
            let mut out = Vec::new();
            for n in spec.n_range() {
                for (i, m) in exhaustive(spec.rank, n).into_iter().enumerate() {
                    out.push((format!("r{}n{}-{}", spec.rank, n, i + 1), m));
                }
            }
            Ok(out)
        }
        CatalogMode::Constructed => {
            if spec.n_max > CONSTRUCTED_MAX_N {
                return Err(Error::CatalogCapExceeded(format!(
                    "constructed mode allows at most {CONSTRUCTED_MAX_N} elements, got {}",
                    spec.n_max
                )));
            }
            constructed(spec)
        }
    }
}

/// Every matroid of rank `r` on exactly `n` elements (loops allowed), one per
/// isomorphism class, each given by its lexicographically smallest
/// relabeling, sorted by basis list.
pub fn exhaustive(r: usize, n: usize) -> Vec<Matroid> {
    assert!(n <= EXHAUSTIVE_MAX_N && r <= n);
    let subsets: Vec<ElementSet> = ElementSet::full(n).subsets_of_size(r).collect();
    let m = subsets.len();
    let index_of = |s: ElementSet| subsets.binary_search(&s).expect("r-subset");

    // need[i][j]: for each e ∈ S_i \ S_j, the subsets S_i - e + f, f ∈ S_j \ S_i.
    let need: Vec<Vec<Vec<u64>>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let (a, b) = (subsets[i], subsets[j]);
                    a.difference(b)
                        .iter()
                        .map(|e| {
                            b.difference(a)
                                .iter()
                                .fold(0u64, |acc, f| acc | 1 << index_of(a.exchange(e, f)))
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    let perms: Vec<Vec<usize>> = (0..n)
        .permutations(n)
        .map(|p| subsets.iter().map(|s| index_of(s.map_elements(&p))).collect())
        .collect();

    let mut classes: BTreeSet<ElementSet> = BTreeSet::new();
    for family in 1u64..(1u64 << m) {
        let members = ElementSet::from_bits(family);
        let ok = members.iter().all(|i| {
            members
                .iter()
                .all(|j| need[i][j].iter().all(|&mask| mask & family != 0))
        });
        if !ok {
            continue;
        }
        // Under ElementSet's order the smallest image mask is exactly the
        // lexicographically smallest sorted basis list (all images have
        // the same size).
        let best = perms
            .iter()
            .map(|p| members.map_elements(p))
            .min()
            .expect("at least the identity");
        classes.insert(best);
    }
    classes
        .into_iter()
        .map(|mask| {
            let bases: Vec<ElementSet> = mask.iter().map(|i| subsets[i]).collect();
            Matroid::validate_bases(n, bases).expect("enumerated families satisfy the axiom")
        })
        .collect()
}

/// Per-element invariant used to restrict canonical-form permutations.
fn element_invariants(m: &Matroid) -> Vec<(usize, usize)> {
    (0..m.ground_size())
        .map(|e| {
            let through = m.bases().iter().filter(|b| b.contains(e)).count();
            let parallel = (0..m.ground_size())
                .filter(|&f| f != e && m.rank_unchecked(ElementSet::singleton(e).with(f)) == 1)
                .count();
            (through, parallel)
        })
        .collect()
}

/// Isomorphism-invariant relabeling: among all relabelings that list the
/// elements by increasing invariant, the one with the smallest basis list.
pub fn canonical_form(m: &Matroid) -> Result<Matroid> {
    let n = m.ground_size();
    if n > CANONICAL_MAX_N {
        return Err(Error::CapExceeded {
            size: n,
            cap: CANONICAL_MAX_N,
        });
    }
    if n == 0 {
        return Ok(m.clone());
    }
    let inv = element_invariants(m);
    let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for e in 0..n {
        groups.entry(inv[e]).or_default().push(e);
    }
    // Position blocks: the group with the smallest invariant takes the first labels.
    let mut slots = Vec::new();
    let mut start = 0;
    for members in groups.values() {
        slots.push((members.clone(), start));
        start += members.len();
    }
    let mut best: Option<Vec<ElementSet>> = None;
    let per_group: Vec<Vec<Vec<usize>>> = slots
        .iter()
        .map(|(members, _)| members.iter().copied().permutations(members.len()).collect())
        .collect();
    for choice in per_group.iter().multi_cartesian_product() {
        let mut perm = vec![0usize; n];
        for ((_, offset), order) in slots.iter().zip(&choice) {
            for (k, &e) in order.iter().enumerate() {
                perm[e] = offset + k;
            }
        }
        let mut bases: Vec<ElementSet> = m.bases().iter().map(|b| b.map_elements(&perm)).collect();
        bases.sort_unstable();
        if best.as_ref().is_none_or(|b| bases < *b) {
            best = Some(bases);
        }
    }
    Ok(Matroid::validate_bases(n, best.expect("some permutation")).expect("relabeling keeps the axiom"))
}

/// Multigraphs on exactly `vertices` vertices (no loops) with every edge
/// multiplicity at most `max_multiplicity`, one per isomorphism class.
/// Edges are listed as one-based pairs, copies of a pair consecutively.
pub fn multigraphs(
    vertices: usize,
    max_multiplicity: usize,
    edge_count: Option<usize>,
) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..vertices).tuple_combinations().collect();
    let slot = |a: usize, b: usize| pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
    let perms: Vec<Vec<usize>> = (0..vertices)
        .permutations(vertices)
        .map(|p| pairs.iter().map(|&(a, b)| slot(p[a], p[b])).collect())
        .collect();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut current = vec![0usize; pairs.len()];
    loop {
        let total: usize = current.iter().sum();
        if edge_count.is_none_or(|c| c == total) && total > 0 {
            let canonical = perms
                .iter()
                .map(|p| {
                    let mut image = vec![0usize; pairs.len()];
                    for (i, &mult) in current.iter().enumerate() {
                        image[p[i]] = mult;
                    }
                    image
                })
                .max()
                .expect("identity");
            seen.insert(canonical);
        }
        // odometer over multiplicity vectors
        let Some(pos) = (0..pairs.len()).find(|&i| current[i] < max_multiplicity) else {
            break;
        };
        current[pos] += 1;
        current[..pos].iter_mut().for_each(|x| *x = 0);
    }
    seen.into_iter()
        .rev()
        .map(|mult| {
            pairs
                .iter()
                .zip(&mult)
                .flat_map(|(&(a, b), &k)| std::iter::repeat_n((a + 1, b + 1), k))
                .collect()
        })
        .collect()
}

fn edges_name(edges: &[(usize, usize)]) -> String {
    edges.iter().map(|(a, b)| format!("{a}{b}")).join(".")
}

/// All nonzero vectors of `GF(p)^dim` whose first nonzero entry is 1.
fn projective_points(p: u64, dim: usize) -> Vec<Vec<u64>> {
    (0..dim)
        .map(|_| 0..p)
        .multi_cartesian_product()
        .filter(|v| v.iter().find(|&&x| x != 0) == Some(&1))
        .collect()
}

fn column_matroids(p: u64, r: usize, n_range: &std::ops::RangeInclusive<usize>, max_n: usize) -> Vec<(String, Matroid)> {
    let points = projective_points(p, r);
    let mut out = Vec::new();
    for n in n_range.clone() {
        if n > max_n || n > points.len() || binomial(points.len(), n) > 5_000 {
            continue;
        }
        for cols in (0..points.len()).combinations(n) {
            let rows: Vec<Vec<u64>> = (0..r).map(|i| cols.iter().map(|&c| points[c][i]).collect()).collect();
            let Ok(m) = linear_gf(&rows, p) else { continue };
            if m.rank() == r {
                out.push((format!("gf{p}-{}", cols.iter().map(|c| c + 1).join(".")), m));
            }
        }
    }
    out
}

fn constructed(spec: &CatalogSpec) -> Result<Vec<(String, Matroid)>> {
    let r = spec.rank;
    let n_range = spec.n_range();
    let in_range = |m: &Matroid| m.rank() == r && n_range.contains(&m.ground_size());
    let mut raw: Vec<(String, Matroid)> = Vec::new();

    for n in n_range.clone() {
        raw.push((format!("U{r},{n}"), uniform(r, n)?));
    }
    let mut graphs: Vec<(String, Matroid)> = Vec::new();
    let mut graphs_up: Vec<(String, Matroid)> = Vec::new();
    for v in 2..=GRAPH_MAX_VERTICES {
        for edges in multigraphs(v, 1, None) {
            if edges.len() > spec.n_max + 1 {
                continue;
            }
            let m = graphic(v, &edges)?;
            let name = format!("graph{v}-{}", edges_name(&edges));
            if in_range(&m) {
                graphs.push((name, m));
            } else if m.rank() == r + 1 && n_range.contains(&m.ground_size()) {
                graphs_up.push((name, m));
            }
        }
    }
    raw.extend(graphs.iter().cloned());
    if r >= 1 {
        raw.extend(column_matroids(2, r, &n_range, spec.n_max));
        raw.extend(column_matroids(3, r, &n_range, spec.n_max.min(6)));
    }
    let extendable: Vec<(String, Matroid)> = raw.clone();
    for (name, m) in &extendable {
        if m.ground_size() < spec.n_max && m.rank() > 0 {
            let (ext, _) = m.blow_up(ElementSet::singleton(0), 2)?;
            raw.push((format!("par({name})"), ext));
        }
    }
    for (name, m) in &graphs_up {
        raw.push((format!("trunc({name})"), truncation(m, r)?));
    }

    let mut seen: HashSet<Matroid> = HashSet::new();
    let mut out = Vec::new();
    for (name, m) in raw {
        if !in_range(&m) {
            continue;
        }
        let key = if spec.dedup && m.ground_size() <= CANONICAL_MAX_N {
            canonical_form(&m)?
        } else {
            m.clone()
        };
        if seen.insert(key) {
            out.push((name, m));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{five_basis, k4, u};

    fn isomorphic(a: &Matroid, b: &Matroid) -> bool {
        canonical_form(a).unwrap() == canonical_form(b).unwrap()
    }

    #[test]
    fn rank_one_on_three() {
        let spec = CatalogSpec::exhaustive(1, 3).with_n_min(3);
        let cat = catalog_generate(&spec).unwrap();
        let counts: Vec<usize> = cat.iter().map(|(_, m)| m.basis_count()).collect();
        assert_eq!(counts, vec![1, 2, 3]);
    }

    #[test]
    fn rank_two_on_four_contains_known_matroids() {
        let cat = exhaustive(2, 4);
        assert!(cat.iter().any(|m| isomorphic(m, &u(2, 4))));
        assert!(cat.iter().any(|m| isomorphic(m, &five_basis())));
        for (i, a) in cat.iter().enumerate() {
            for b in &cat[i + 1..] {
                assert!(!isomorphic(a, b));
            }
        }
    }

    #[test]
    fn canonical_form_is_invariant() {
        let m = k4();
        let shuffled = m.relabel(&[3, 5, 0, 1, 4, 2]);
        assert_eq!(canonical_form(&m).unwrap(), canonical_form(&shuffled).unwrap());
        assert!(!isomorphic(&u(2, 4), &five_basis()));
    }

    #[test]
    fn constructed_rank_three_contains_k4() {
        let cat = catalog_generate(&CatalogSpec::constructed(3, 7)).unwrap();
        assert!(cat.iter().any(|(_, m)| isomorphic(m, &k4())));
        // the Fano plane arises from all seven GF(2) points
        assert!(cat.iter().any(|(_, m)| m.ground_size() == 7 && m.basis_count() == 28));
        assert!(cat.iter().all(|(_, m)| m.rank() == 3 && m.ground_size() <= 7));
    }

    #[test]
    fn caps() {
        assert!(matches!(
            catalog_generate(&CatalogSpec::exhaustive(2, 7)),
            Err(Error::CatalogCapExceeded(_))
        ));
        assert!(matches!(
            canonical_form(&u(1, 9)),
            Err(Error::CapExceeded { size: 9, cap: 8 })
        ));
    }

    #[test]
    fn multigraph_counts() {
        // simple graphs on four vertices: 11 classes, 10 with an edge
        assert_eq!(multigraphs(4, 1, None).len(), 10);
        assert_eq!(multigraphs(5, 1, None).len(), 33);
        // two vertices joined by a double edge
        assert_eq!(multigraphs(2, 2, Some(2)), vec![vec![(1, 2), (1, 2)]]);
    }
}
