//! Basis graph, complementary basis graph and k-base graph.

use std::collections::{HashMap, VecDeque};

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::partition::{complementary_bases, is_k_matroid, partition_set_into_bases, BasePartition};

pub const DEFAULT_VERTEX_CAP: usize = 1_000_000;
pub const DEFAULT_DIAMETER_THRESHOLD: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    /// All bases; adjacent when the symmetric difference has two elements.
    Basis,
    /// The basis graph induced on complementary bases.
    Complementary,
    /// Partitions into k bases; adjacent when they share a block.
    Kbase,
    /// Complementary graph of a 2-matroid plus an edge `B - E\B` for every vertex.
    KbaseModified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Vertices {
    Bases(Vec<ElementSet>),
    Partitions(Vec<BasePartition>),
}

impl Vertices {
    pub fn len(&self) -> usize {
        match self {
            Vertices::Bases(v) => v.len(),
            Vertices::Partitions(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeGraph {
    pub kind: GraphKind,
    pub vertices: Vertices,
    /// `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub matroid_hash: String,
    pub k: usize,
}

impl ExchangeGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }
}

/// `B(M)`: every basis, edges between bases differing by one exchange.
pub fn basis_graph(m: &Matroid, vertex_cap: usize) -> Result<ExchangeGraph> {
    if m.basis_count() > vertex_cap {
        return Err(Error::VertexCountCapExceeded { cap: vertex_cap });
    }
    let vertices = m.bases().to_vec();
    let edges = neighbour_edges(m, &vertices);
    Ok(ExchangeGraph {
        kind: GraphKind::Basis,
        vertices: Vertices::Bases(vertices),
        edges,
        matroid_hash: m.content_hash(),
        k: 1,
    })
}

/// Edges of the basis graph induced on `vertices` (sorted, all bases).
fn neighbour_edges(m: &Matroid, vertices: &[ElementSet]) -> Vec<(usize, usize)> {
    let outside_all = m.ground();
    let mut edges = Vec::new();
    for (i, &b) in vertices.iter().enumerate() {
        for e in b {
            for f in outside_all.difference(b) {
                let other = b.exchange(e, f);
                if !m.is_basis(other) {
                    continue;
                }
                if let Ok(j) = vertices.binary_search(&other) {
                    if j > i {
                        edges.push((i, j));
                    }
                }
            }
        }
    }
    edges.sort_unstable();
    edges
}

/// `B^c(M)` of a k-matroid; with `modified` (k = 2 only) each complementary
/// basis is also joined to its complement.
pub fn complementary_basis_graph(
    m: &Matroid,
    k: usize,
    modified: bool,
    vertex_cap: usize,
) -> Result<ExchangeGraph> {
    if modified && k != 2 {
        return Err(Error::InvalidParameter(
            "the modified complementary graph is defined for k = 2 only".into(),
        ));
    }
    let vertices = complementary_bases(m, k)?;
    if vertices.len() > vertex_cap {
        return Err(Error::VertexCountCapExceeded { cap: vertex_cap });
    }
    let mut edges = neighbour_edges(m, &vertices);
    let kind = if modified {
        for (i, &b) in vertices.iter().enumerate() {
            let complement = m.ground().difference(b);
            if let Ok(j) = vertices.binary_search(&complement) {
                if j > i {
                    edges.push((i, j));
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        GraphKind::KbaseModified
    } else {
        GraphKind::Complementary
    };
    Ok(ExchangeGraph {
        kind,
        vertices: Vertices::Bases(vertices),
        edges,
        matroid_hash: m.content_hash(),
        k,
    })
}

/// Every partition of `ground` into `k` bases, as sorted block tuples in
/// lexicographic order.
///
/// Backtracking: the next block always contains the smallest uncovered
/// element, and a block is only taken when the remainder still splits.
pub fn enumerate_partitions(
    m: &Matroid,
    ground: ElementSet,
    k: usize,
    cap: usize,
) -> Result<Vec<BasePartition>> {
    let mut out = Vec::new();
    if partition_set_into_bases(m, ground, k).is_none() {
        return Ok(out);
    }
    let mut stack = Vec::with_capacity(k);
    extend_partitions(m, ground, k, cap, &mut stack, &mut out)?;
    Ok(out)
}

fn extend_partitions(
    m: &Matroid,
    rest: ElementSet,
    remaining: usize,
    cap: usize,
    stack: &mut Vec<ElementSet>,
    out: &mut Vec<BasePartition>,
) -> Result<()> {
    if remaining == 0 {
        if out.len() >= cap {
            return Err(Error::VertexCountCapExceeded { cap });
        }
        out.push(BasePartition {
            blocks: stack.clone(),
        });
        return Ok(());
    }
    let Some(x) = rest.first() else {
        // rank 0: only empty blocks remain
        stack.extend(std::iter::repeat_n(ElementSet::EMPTY, remaining));
        let r = extend_partitions(m, rest, 0, cap, stack, out);
        stack.truncate(stack.len() - remaining);
        return r;
    };
    for &b in m.bases() {
        if !b.contains(x) || !b.is_subset(rest) {
            continue;
        }
        let left = rest.difference(b);
        if remaining > 1 && partition_set_into_bases(m, left, remaining - 1).is_none() {
            continue;
        }
        stack.push(b);
        let r = extend_partitions(m, left, remaining - 1, cap, stack, out);
        stack.pop();
        r?;
    }
    Ok(())
}

/// `B_k(M)`: partitions of `E` into `k` bases, adjacent when they share a block.
///
/// Meant for `k ≥ 3`; `k = 2` needs `allow_k2`.
pub fn k_base_graph(m: &Matroid, k: usize, allow_k2: bool, vertex_cap: usize) -> Result<ExchangeGraph> {
    match k {
        0 | 1 => {
            return Err(Error::InvalidParameter(format!(
                "the k-base graph needs k >= 2, got {k}"
            )))
        }
        2 if !allow_k2 => return Err(Error::KBaseGraphNeedsFlag),
        _ => {}
    }
    if !is_k_matroid(m, k) {
        return Err(Error::NotKMatroid { k });
    }
    let partitions = enumerate_partitions(m, m.ground(), k, vertex_cap)?;
    let mut holders: HashMap<ElementSet, Vec<usize>> = HashMap::new();
    for (i, p) in partitions.iter().enumerate() {
        for &b in &p.blocks {
            holders.entry(b).or_default().push(i);
        }
    }
    let mut edges = Vec::new();
    for list in holders.values() {
        for (a, &i) in list.iter().enumerate() {
            for &j in &list[a + 1..] {
                edges.push((i.min(j), i.max(j)));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(ExchangeGraph {
        kind: GraphKind::Kbase,
        vertices: Vertices::Partitions(partitions),
        edges,
        matroid_hash: m.content_hash(),
        k,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Diameter {
    Exact(usize),
    /// The largest component exceeded the BFS threshold.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub component_count: usize,
    /// Largest first.
    pub component_sizes: Vec<usize>,
    pub diameter_of_largest: Option<Diameter>,
    pub is_connected: bool,
    /// Lowest-index vertex of each component, in the order of `component_sizes`.
    pub component_representatives: Vec<usize>,
}

/// Components by union-find, then the exact diameter of the largest
/// component by BFS from each of its vertices.
pub fn analyze(g: &ExchangeGraph, diameter_threshold: usize) -> GraphSummary {
    let n = g.vertex_count();
    let mut uf = UnionFind::<usize>::new(n);
    for &(a, b) in &g.edges {
        uf.union(a, b);
    }
    let labels = uf.into_labeling();
    let mut by_root: HashMap<usize, (usize, usize)> = HashMap::new();
    for (v, &root) in labels.iter().enumerate() {
        let entry = by_root.entry(root).or_insert((0, v));
        entry.0 += 1;
    }
    let mut comps: Vec<(usize, usize, usize)> = by_root
        .into_iter()
        .map(|(root, (size, rep))| (size, rep, root))
        .collect();
    // largest first, ties by lowest representative
    comps.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

    let diameter_of_largest = comps.first().map(|&(size, _, root)| {
        if size > diameter_threshold {
            return Diameter::Skipped;
        }
        let adj = g.adjacency();
        let members: Vec<usize> = (0..n).filter(|&v| labels[v] == root).collect();
        let mut dist = vec![usize::MAX; n];
        let mut best = 0;
        for &s in &members {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        best = best.max(dist[w]);
                        queue.push_back(w);
                    }
                }
            }
        }
        Diameter::Exact(best)
    });

    GraphSummary {
        vertex_count: n,
        edge_count: g.edges.len(),
        component_count: comps.len(),
        component_sizes: comps.iter().map(|c| c.0).collect(),
        diameter_of_largest,
        is_connected: comps.len() <= 1,
        component_representatives: comps.iter().map(|c| c.1).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{five_basis, k4, set1, u};

    fn summary(g: &ExchangeGraph) -> GraphSummary {
        analyze(g, DEFAULT_DIAMETER_THRESHOLD)
    }

    fn bare(vertices: usize, edges: Vec<(usize, usize)>) -> ExchangeGraph {
        ExchangeGraph {
            kind: GraphKind::Basis,
            vertices: Vertices::Bases((0..vertices).map(ElementSet::singleton).collect()),
            edges,
            matroid_hash: String::new(),
            k: 1,
        }
    }

    #[test]
    fn basis_graph_of_rank_one_is_complete() {
        let g = basis_graph(&u(1, 5), DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edges.len(), 10);
    }

    #[test]
    fn octahedron() {
        let g = basis_graph(&u(2, 4), DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(g.edges.len(), 12);
        let s = summary(&g);
        assert!(s.is_connected);
        assert_eq!(s.diameter_of_largest, Some(Diameter::Exact(2)));
        // {1,2} is index 0 and {3,4} index 5
        assert!(!g.edges.contains(&(0, 5)));
    }

    #[test]
    fn five_basis_graph() {
        let g = basis_graph(&five_basis(), DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edges.len(), 8);
    }

    #[test]
    fn complementary_graphs() {
        let g = complementary_basis_graph(&u(2, 4), 2, false, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!((g.vertex_count(), g.edges.len()), (6, 12));

        let fb = five_basis();
        let g = complementary_basis_graph(&fb, 2, false, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(
            g.vertices,
            Vertices::Bases(vec![set1(&[1, 3]), set1(&[1, 4]), set1(&[2, 3]), set1(&[2, 4])])
        );
        assert_eq!(g.edges.len(), 4);
        let s = summary(&g);
        assert!(s.is_connected);
        assert_eq!(s.diameter_of_largest, Some(Diameter::Exact(2)));

        let g = complementary_basis_graph(&fb, 2, true, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(g.kind, GraphKind::KbaseModified);
        assert_eq!(g.edges.len(), 6);
        assert_eq!(summary(&g).diameter_of_largest, Some(Diameter::Exact(1)));
    }

    #[test]
    fn complementary_graph_errors() {
        assert_eq!(
            complementary_basis_graph(&u(2, 5), 2, false, DEFAULT_VERTEX_CAP).unwrap_err(),
            Error::NotKMatroid { k: 2 }
        );
        assert!(matches!(
            complementary_basis_graph(&u(2, 6), 3, true, DEFAULT_VERTEX_CAP),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn k_base_graphs() {
        let g = k_base_graph(&u(1, 3), 3, false, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!((g.vertex_count(), g.edges.len()), (1, 0));

        let g = k_base_graph(&u(2, 6), 3, false, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(g.vertex_count(), 15);
        assert!(summary(&g).is_connected);

        assert_eq!(
            k_base_graph(&five_basis(), 2, false, DEFAULT_VERTEX_CAP).unwrap_err(),
            Error::KBaseGraphNeedsFlag
        );
        let g = k_base_graph(&five_basis(), 2, true, DEFAULT_VERTEX_CAP).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges.len(), 0);
        assert_eq!(summary(&g).component_count, 2);
    }

    #[test]
    fn k_base_vertex_cap() {
        assert_eq!(
            k_base_graph(&u(2, 6), 3, false, 10).unwrap_err(),
            Error::VertexCountCapExceeded { cap: 10 }
        );
        assert_eq!(
            basis_graph(&u(2, 6), 10).unwrap_err(),
            Error::VertexCountCapExceeded { cap: 10 }
        );
    }

    #[test]
    fn analyze_small_graphs() {
        let s = summary(&bare(2, vec![]));
        assert_eq!(s.component_count, 2);
        assert!(!s.is_connected);
        let s = summary(&bare(4, vec![(0, 1), (1, 2), (2, 3), (0, 3)]));
        assert!(s.is_connected);
        assert_eq!(s.diameter_of_largest, Some(Diameter::Exact(2)));
        let s = analyze(&bare(4, vec![(0, 1), (1, 2), (2, 3)]), 3);
        assert_eq!(s.diameter_of_largest, Some(Diameter::Skipped));
        let s = summary(&bare(5, vec![(3, 4), (0, 1), (1, 2)]));
        assert_eq!(s.component_sizes, vec![3, 2]);
        assert_eq!(s.component_representatives, vec![0, 3]);
    }

    #[test]
    fn basis_graph_edges_are_symmetric_exchanges() {
        let m = k4();
        let g = basis_graph(&m, DEFAULT_VERTEX_CAP).unwrap();
        let Vertices::Bases(vs) = &g.vertices else { unreachable!() };
        for &(a, b) in &g.edges {
            let (b1, b2) = (vs[a], vs[b]);
            let e = b1.difference(b2).first().unwrap();
            assert!(!m.symmetric_exchange_partners(b1, b2, e).unwrap().is_empty());
        }
    }
}
