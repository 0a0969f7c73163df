//! Per-instance checkers: complementary-graph connectivity, shared blocks of
//! partitions of `E \ x` and `E \ y`, the non-complementary count audit,
//! blow-up containment and the bounded catalog scan.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::{binomial, ElementSet};
use crate::error::{Error, Result};
use crate::fiber::{check_white_degree, Variant};
use crate::graphs::{analyze, complementary_basis_graph, k_base_graph, Diameter, Vertices};
use crate::matroid::Matroid;
use crate::morphism::verify_morphism;
use crate::partition::{complement_partition, is_k_matroid, partition_set_into_bases, BasePartition};

/// Connectivity of the complementary basis graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplementaryReport {
    pub k: usize,
    pub modified: bool,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub component_sizes: Vec<usize>,
    pub connected: bool,
    pub diameter: Option<Diameter>,
    /// Two complementary bases in different components.
    pub witness: Option<(ElementSet, ElementSet)>,
}

pub fn check_complementary_connected(
    m: &Matroid,
    k: usize,
    modified: bool,
    vertex_cap: usize,
    diameter_threshold: usize,
) -> Result<ComplementaryReport> {
    let g = complementary_basis_graph(m, k, modified, vertex_cap)?;
    let summary = analyze(&g, diameter_threshold);
    let Vertices::Bases(bases) = &g.vertices else {
        unreachable!("complementary graphs have basis vertices")
    };
    let witness = (summary.component_count > 1).then(|| {
        let reps = &summary.component_representatives;
        (bases[reps[0]], bases[reps[1]])
    });
    Ok(ComplementaryReport {
        k,
        modified,
        vertex_count: summary.vertex_count,
        edge_count: summary.edge_count,
        component_sizes: summary.component_sizes,
        connected: summary.is_connected,
        diameter: summary.diameter_of_largest,
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case", deny_unknown_fields)]
pub enum SharedBlockOutcome {
    /// `without_x` partitions `E \ x`, `without_y` partitions `E \ y`, both
    /// containing `shared` as their first block.
    Holds {
        shared: ElementSet,
        without_x: BasePartition,
        without_y: BasePartition,
    },
    Fails,
    NotApplicable { reason: String },
}

/// For `|E| = k·r + 1`: do some partition of `E \ x` and some partition of
/// `E \ y` into `k` bases share a block?
///
/// A shared block `B` avoids both `x` and `y`, so the search runs over bases
/// `B ⊆ E \ {x, y}` and asks whether `E \ x \ B` and `E \ y \ B` both split
/// into `k - 1` bases. The first such `B` in canonical order is returned.
pub fn check_kr_plus_1(m: &Matroid, k: usize, x: usize, y: usize) -> Result<SharedBlockOutcome> {
    let expected = k * m.rank() + 1;
    if m.ground_size() != expected {
        return Err(Error::SizeMismatch {
            expected,
            actual: m.ground_size(),
        });
    }
    for e in [x, y] {
        if e >= m.ground_size() {
            return Err(Error::ElementOutOfRange {
                element: e,
                ground_size: m.ground_size(),
            });
        }
    }
    if x == y {
        return Err(Error::InvalidParameter("x and y must differ".into()));
    }
    let ground = m.ground();
    let (ex, ey) = (ground.without(x), ground.without(y));
    for (rest, e) in [(ex, x), (ey, y)] {
        if partition_set_into_bases(m, rest, k).is_none() {
            return Ok(SharedBlockOutcome::NotApplicable {
                reason: format!("E \\ {} does not split into {k} bases", e + 1),
            });
        }
    }
    let avoid = ElementSet::singleton(x).with(y);
    for &b in m.bases() {
        if !b.is_disjoint(avoid) {
            continue;
        }
        let Some(px) = partition_set_into_bases(m, ex.difference(b), k - 1) else {
            continue;
        };
        let Some(py) = partition_set_into_bases(m, ey.difference(b), k - 1) else {
            continue;
        };
        let with_b = |p: BasePartition| {
            let mut blocks = vec![b];
            blocks.extend(p.blocks);
            BasePartition { blocks }
        };
        return Ok(SharedBlockOutcome::Holds {
            shared: b,
            without_x: with_b(px),
            without_y: with_b(py),
        });
    }
    Ok(SharedBlockOutcome::Fails)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundAudit {
    pub count: usize,
    /// Decimal string; the bound outgrows every machine integer quickly.
    #[serde(with = "decimal")]
    pub bound: BigUint,
    pub ok: bool,
    pub non_complementary: Vec<ElementSet>,
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        BigUint::parse_bytes(text.as_bytes(), 10).ok_or_else(|| serde::de::Error::custom("not a decimal integer"))
    }
}

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::from(1u32), |acc, i| acc * i)
}

/// `r·(r+2)! + s·(r+1)!`.
pub fn noncomplementary_bound(r: usize, s: usize) -> BigUint {
    BigUint::from(r) * factorial(r + 2) + BigUint::from(s) * factorial(r + 1)
}

/// Counts the members of `disjoint` that are not complementary and compares
/// the count with [`noncomplementary_bound`].
pub fn audit_noncomplementary_bound(
    m: &Matroid,
    k: usize,
    s: usize,
    disjoint: &[ElementSet],
) -> Result<BoundAudit> {
    if !is_k_matroid(m, k) {
        return Err(Error::NotKMatroid { k });
    }
    if s > k || disjoint.len() != k - s {
        return Err(Error::SizeMismatch {
            expected: k.saturating_sub(s),
            actual: disjoint.len(),
        });
    }
    let mut seen = ElementSet::EMPTY;
    for &b in disjoint {
        if !m.is_basis(b) {
            return Err(Error::NotABasis(b));
        }
        if !b.is_disjoint(seen) {
            return Err(Error::NotDisjoint);
        }
        seen = seen.union(b);
    }
    let non_complementary: Vec<ElementSet> = disjoint
        .iter()
        .copied()
        .filter(|&b| complement_partition(m, b, k).is_none())
        .collect();
    let bound = noncomplementary_bound(m.rank(), s);
    let count = non_complementary.len();
    Ok(BoundAudit {
        ok: BigUint::from(count) <= bound,
        count,
        bound,
        non_complementary,
    })
}

/// Labels for a blow-up containment: `classes[i]` holds every element
/// carrying the label of the `i`-th element of the first block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlowupLabeling {
    pub blocks: Vec<ElementSet>,
    pub classes: Vec<ElementSet>,
    pub untouched: ElementSet,
}

impl BlowupLabeling {
    /// The collapsing map `∪B ∪ F → B_1 ∪ F` on the original ground set.
    pub fn collapse(&self, ground_size: usize) -> Vec<Option<usize>> {
        let mut map = vec![None; ground_size];
        let first = self.blocks[0].to_vec();
        for (label, class) in self.classes.iter().enumerate() {
            for x in *class {
                map[x] = Some(first[label]);
            }
        }
        for f in self.untouched {
            map[f] = Some(f);
        }
        map
    }

    /// Checks the labeling by building the restricted morphism.
    pub fn verify(&self, m: &Matroid) -> Result<()> {
        let all = self.blocks.iter().fold(self.untouched, |acc, b| acc.union(*b));
        let collapse = self.collapse(m.ground_size());
        verify_restricted(m, all, self.blocks[0].union(self.untouched), &collapse)
    }
}

fn verify_restricted(m: &Matroid, source: ElementSet, target: ElementSet, collapse: &[Option<usize>]) -> Result<()> {
    let src = m.restrict(source)?;
    let tgt = m.restrict(target)?;
    let map: Vec<usize> = src
        .original
        .iter()
        .map(|&o| {
            let image = collapse[o].expect("every source element is labelled");
            tgt.original.binary_search(&image).expect("image lies in the target")
        })
        .collect();
    verify_morphism(&src.matroid, &tgt.matroid, &map)
}

/// Searches for a labeling showing that `M|(∪B ∪ F)` maps onto
/// `M|(B_1 ∪ F)` by collapsing each label class onto its element of `B_1`.
///
/// Elements of `B_1` label themselves; every other block receives a
/// bijection onto the labels. Elements are assigned in decreasing order of
/// the number of non-bases through them, and each assignment is checked
/// against every transversal it completes.
pub fn detect_blowup_containment(
    m: &Matroid,
    blocks: &[ElementSet],
    untouched: ElementSet,
) -> Result<Option<BlowupLabeling>> {
    let Some(&first) = blocks.first() else {
        return Err(Error::InvalidParameter("at least one block is needed".into()));
    };
    let mut covered = ElementSet::EMPTY;
    for &b in blocks {
        m.check_subset(b)?;
        if !m.is_basis(b) {
            return Err(Error::NotABasis(b));
        }
        if !b.is_disjoint(covered) {
            return Err(Error::NotDisjoint);
        }
        covered = covered.union(b);
    }
    m.check_subset(untouched)?;
    if !untouched.is_disjoint(covered) {
        return Err(Error::NotDisjoint);
    }
    let r = m.rank();
    let all = covered.union(untouched);
    let first_elems = first.to_vec();
    // Target bases: subsets of B_1 ∪ F, written as (label set, F part).
    let targets: Vec<(Vec<usize>, ElementSet)> = m
        .bases()
        .iter()
        .filter(|b| b.is_subset(first.union(untouched)))
        .map(|b| {
            let labels = (0..r).filter(|&i| b.contains(first_elems[i])).collect();
            (labels, b.intersection(untouched))
        })
        .collect();

    let mut label: Vec<Option<usize>> = vec![None; m.ground_size()];
    for (i, &e) in first_elems.iter().enumerate() {
        label[e] = Some(i);
    }
    let mut order: Vec<(usize, usize)> = Vec::new();
    for (bi, b) in blocks.iter().enumerate().skip(1) {
        for x in *b {
            order.push((x, bi));
        }
    }
    let through: Vec<usize> = (0..m.ground_size())
        .map(|x| m.bases().iter().filter(|b| b.contains(x) && b.is_subset(all)).count())
        .collect();
    let possible = binomial(all.len().saturating_sub(1), r.saturating_sub(1));
    order.sort_by_key(|&(x, _)| (std::cmp::Reverse(possible.saturating_sub(through[x] as u128)), x));

    let mut search = LabelSearch {
        m,
        targets: &targets,
        blocks,
        order: &order,
        label: &mut label,
        used: vec![0u64; blocks.len()],
    };
    if !search.assign(0) {
        return Ok(None);
    }
    let mut classes = vec![ElementSet::EMPTY; r];
    for x in covered {
        let l = search.label[x].expect("all block elements labelled");
        classes[l] = classes[l].with(x);
    }
    let labeling = BlowupLabeling {
        blocks: blocks.to_vec(),
        classes,
        untouched,
    };
    labeling.verify(m)?;
    Ok(Some(labeling))
}

struct LabelSearch<'a> {
    m: &'a Matroid,
    targets: &'a [(Vec<usize>, ElementSet)],
    blocks: &'a [ElementSet],
    order: &'a [(usize, usize)],
    label: &'a mut Vec<Option<usize>>,
    /// Labels already taken inside each block, as bit masks.
    used: Vec<u64>,
}

impl LabelSearch<'_> {
    fn assign(&mut self, at: usize) -> bool {
        let Some(&(x, block)) = self.order.get(at) else {
            return true;
        };
        for l in 0..self.m.rank() {
            if self.used[block] & (1 << l) != 0 {
                continue;
            }
            self.label[x] = Some(l);
            self.used[block] |= 1 << l;
            if self.consistent(x, l) && self.assign(at + 1) {
                return true;
            }
            self.used[block] &= !(1 << l);
            self.label[x] = None;
        }
        false
    }

    /// Every transversal using `x` for label `l` and already-labelled
    /// elements elsewhere must be a basis.
    fn consistent(&self, x: usize, l: usize) -> bool {
        let mut by_label = vec![ElementSet::EMPTY; self.m.rank()];
        for b in self.blocks {
            for y in *b {
                if let Some(ly) = self.label[y] {
                    by_label[ly] = by_label[ly].with(y);
                }
            }
        }
        self.targets.iter().all(|(labels, f_part)| {
            if !labels.contains(&l) {
                return true;
            }
            let others: Vec<ElementSet> = labels.iter().filter(|&&o| o != l).map(|&o| by_label[o]).collect();
            self.all_choices_are_bases(&others, f_part.with(x))
        })
    }

    fn all_choices_are_bases(&self, parts: &[ElementSet], acc: ElementSet) -> bool {
        match parts.split_first() {
            None => self.m.is_basis(acc),
            Some((part, rest)) => part.iter().all(|y| self.all_choices_are_bases(rest, acc.with(y))),
        }
    }
}

/// Outcome of one scan check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanStatus {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanEntry {
    pub matroid: String,
    pub hash: String,
    /// `kbase`, `complementary`, `complementary-modified` or `white-<variant>`.
    pub check: String,
    /// `k` for graph checks, `d` for fiber checks.
    pub parameter: usize,
    pub status: ScanStatus,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanReport {
    pub note: String,
    pub matroids: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    /// `(matroid, k)` pairs where the matroid is not a k-matroid.
    pub not_applicable: usize,
    pub entries: Vec<ScanEntry>,
}

pub const SCAN_NOTE: &str = "truncated scan: full decidability needs k up to (r+3)!, \
only the requested k and d ranges were checked";

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub k_range: Vec<usize>,
    pub d_range: Vec<usize>,
    pub variants: Vec<Variant>,
    pub vertex_cap: usize,
    pub fiber_cap: usize,
    pub diameter_threshold: usize,
}

#[derive(Clone, Copy)]
enum Job {
    KBase(usize),
    Complementary(usize, bool),
    White(usize, Variant),
}

/// Runs the graph and fiber checks over a catalog. Caps turn into skipped
/// entries. Work is spread over the current rayon pool; entry order is
/// catalog order, then k, then d and variant.
pub fn corollary_scan(catalog: &[(String, Matroid)], options: &ScanOptions) -> ScanReport {
    let mut jobs: Vec<(usize, Job)> = Vec::new();
    let mut not_applicable = 0;
    for (i, (_, m)) in catalog.iter().enumerate() {
        for &k in &options.k_range {
            if !is_k_matroid(m, k) {
                not_applicable += 1;
                continue;
            }
            if k >= 3 {
                jobs.push((i, Job::KBase(k)));
            } else {
                jobs.push((i, Job::Complementary(k, false)));
                if k == 2 {
                    jobs.push((i, Job::Complementary(k, true)));
                }
            }
        }
        for &d in &options.d_range {
            for &v in &options.variants {
                jobs.push((i, Job::White(d, v)));
            }
        }
    }
    let entries: Vec<ScanEntry> = jobs
        .par_iter()
        .map(|&(i, job)| run_job(&catalog[i].0, &catalog[i].1, job, options))
        .collect();
    let count = |s| entries.iter().filter(|e| e.status == s).count();
    ScanReport {
        note: SCAN_NOTE.to_string(),
        matroids: catalog.len(),
        passed: count(ScanStatus::Pass),
        failed: count(ScanStatus::Fail),
        skipped: count(ScanStatus::Skip),
        not_applicable,
        entries,
    }
}

fn run_job(name: &str, m: &Matroid, job: Job, options: &ScanOptions) -> ScanEntry {
    let (check, parameter, outcome): (String, usize, Result<(bool, String)>) = match job {
        Job::KBase(k) => (
            "kbase".into(),
            k,
            k_base_graph(m, k, false, options.vertex_cap).map(|g| {
                let s = analyze(&g, options.diameter_threshold);
                (
                    s.is_connected,
                    format!("{} vertices, {} components", s.vertex_count, s.component_count),
                )
            }),
        ),
        Job::Complementary(k, modified) => (
            if modified {
                "complementary-modified".into()
            } else {
                "complementary".into()
            },
            k,
            check_complementary_connected(m, k, modified, options.vertex_cap, options.diameter_threshold).map(
                |r| {
                    (
                        r.connected,
                        format!("{} vertices, {} components", r.vertex_count, r.component_sizes.len()),
                    )
                },
            ),
        ),
        Job::White(d, v) => (
            format!("white-{v}"),
            d,
            check_white_degree(m, d, v, options.fiber_cap).map(|r| {
                (
                    r.all_connected(),
                    format!("{} of {} fibers connected", r.fibers_connected, r.fibers_total),
                )
            }),
        ),
    };
    let (status, detail) = match outcome {
        Ok((true, d)) => (ScanStatus::Pass, d),
        Ok((false, d)) => (ScanStatus::Fail, d),
        Err(e) => (ScanStatus::Skip, e.to_string()),
    };
    ScanEntry {
        matroid: name.to_string(),
        hash: m.content_hash(),
        check,
        parameter,
        status,
        detail,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fiber::DEFAULT_FIBER_CAP;
    use crate::graphs::{DEFAULT_DIAMETER_THRESHOLD, DEFAULT_VERTEX_CAP};
    use crate::testing::{five_basis, k4, set1, u};

    fn complementary(m: &Matroid, k: usize) -> ComplementaryReport {
        check_complementary_connected(m, k, false, DEFAULT_VERTEX_CAP, DEFAULT_DIAMETER_THRESHOLD).unwrap()
    }

    #[test]
    fn complementary_connectivity_examples() {
        assert!(complementary(&u(2, 4), 2).connected);
        let fb = complementary(&five_basis(), 2);
        assert!(fb.connected);
        assert_eq!(fb.vertex_count, 4);
        assert!(complementary(&k4(), 2).connected);
        assert_eq!(
            check_complementary_connected(&u(2, 5), 2, false, 10, 10).unwrap_err(),
            Error::NotKMatroid { k: 2 }
        );
    }

    #[test]
    fn shared_block_examples() {
        let parallel = u(1, 3);
        match check_kr_plus_1(&parallel, 2, 0, 1).unwrap() {
            SharedBlockOutcome::Holds { shared, .. } => assert_eq!(shared, set1(&[3])),
            other => panic!("{other:?}"),
        }
        match check_kr_plus_1(&u(2, 5), 2, 4, 3).unwrap() {
            SharedBlockOutcome::Holds {
                shared,
                without_x,
                without_y,
            } => {
                assert_eq!(shared, set1(&[1, 2]));
                let m = u(2, 5);
                assert!(without_x.is_valid_for(&m, m.ground().without(4)));
                assert!(without_y.is_valid_for(&m, m.ground().without(3)));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            check_kr_plus_1(&u(2, 4), 2, 0, 1).unwrap_err(),
            Error::SizeMismatch { expected: 5, actual: 4 }
        );
    }

    #[test]
    fn shared_block_not_applicable() {
        // element 1 is a loop, so E \ 2 cannot split into bases
        let m = Matroid::validate_bases(3, [set1(&[2]), set1(&[3])]).unwrap();
        assert!(matches!(
            check_kr_plus_1(&m, 2, 1, 2).unwrap(),
            SharedBlockOutcome::NotApplicable { .. }
        ));
    }

    #[test]
    fn bound_values() {
        assert_eq!(noncomplementary_bound(2, 0), BigUint::from(48u32));
        assert_eq!(noncomplementary_bound(2, 1), BigUint::from(54u32));
        assert_eq!(noncomplementary_bound(1, 3), BigUint::from(12u32));
    }

    #[test]
    fn audit_examples() {
        let a = audit_noncomplementary_bound(&u(2, 4), 2, 0, &[set1(&[1, 3]), set1(&[2, 4])]).unwrap();
        assert_eq!((a.count, a.ok), (0, true));
        let a = audit_noncomplementary_bound(&five_basis(), 2, 1, &[set1(&[1, 3])]).unwrap();
        assert_eq!(a.count, 0);
        assert_eq!(a.bound, BigUint::from(54u32));
        let a = audit_noncomplementary_bound(&five_basis(), 2, 1, &[set1(&[1, 2])]).unwrap();
        assert_eq!(a.count, 1);
        assert!(a.ok);
        assert_eq!(
            audit_noncomplementary_bound(&u(2, 4), 2, 0, &[set1(&[1, 3]), set1(&[1, 4])]).unwrap_err(),
            Error::NotDisjoint
        );
        let json = serde_json::to_string(&a).unwrap();
        assert!(json.contains("\"bound\":\"54\""));
    }

    #[test]
    fn blow_up_containment_uniform() {
        let m = u(2, 6);
        let blocks = [set1(&[1, 2]), set1(&[3, 4]), set1(&[5, 6])];
        let found = detect_blowup_containment(&m, &blocks, ElementSet::EMPTY).unwrap().unwrap();
        found.verify(&m).unwrap();
    }

    #[test]
    fn blow_up_containment_forced_label() {
        let pairs: Vec<ElementSet> = ElementSet::full(6)
            .subsets_of_size(2)
            .filter(|s| *s != set1(&[1, 3]))
            .collect();
        let m = Matroid::validate_bases(6, pairs).unwrap();
        let blocks = [set1(&[1, 2]), set1(&[3, 4]), set1(&[5, 6])];
        let found = detect_blowup_containment(&m, &blocks, ElementSet::EMPTY).unwrap().unwrap();
        assert!(found.classes[0].contains(2)); // element 3 shares 1's label
        found.verify(&m).unwrap();
    }

    #[test]
    fn blow_up_containment_odd_cycle_of_classes() {
        // U(2,3) with parallel classes {1,6}, {2,3}, {4,5}
        let class = [0usize, 1, 1, 2, 2, 0];
        let pairs: Vec<ElementSet> = ElementSet::full(6)
            .subsets_of_size(2)
            .filter(|s| {
                let v = s.to_vec();
                class[v[0]] != class[v[1]]
            })
            .collect();
        let m = Matroid::validate_bases(6, pairs).unwrap();
        let blocks = [set1(&[1, 2]), set1(&[3, 4]), set1(&[5, 6])];
        assert_eq!(detect_blowup_containment(&m, &blocks, ElementSet::EMPTY).unwrap(), None);
    }

    #[test]
    fn blow_up_containment_with_untouched_set() {
        let m = u(2, 5);
        let blocks = [set1(&[1, 2]), set1(&[3, 4])];
        let found = detect_blowup_containment(&m, &blocks, set1(&[5])).unwrap().unwrap();
        found.verify(&m).unwrap();
        assert_eq!(
            detect_blowup_containment(&m, &blocks, set1(&[4])).unwrap_err(),
            Error::NotDisjoint
        );
    }

    #[test]
    fn blow_up_of_a_basis_is_detected() {
        // the k-th blow-up of B_1 in U(2,3): copies of 1 and 2
        let (m, _) = u(2, 3).blow_up(set1(&[1, 2]), 3).unwrap();
        // elements: 1,2,3 copies of a; 4,5,6 copies of b; 7 is c
        let blocks = [set1(&[1, 4]), set1(&[2, 5]), set1(&[3, 6])];
        let found = detect_blowup_containment(&m, &blocks, set1(&[7])).unwrap().unwrap();
        assert_eq!(found.classes, vec![set1(&[1, 2, 3]), set1(&[4, 5, 6])]);
    }

    fn options(k_range: Vec<usize>, d_range: Vec<usize>) -> ScanOptions {
        ScanOptions {
            k_range,
            d_range,
            variants: vec![Variant::W1, Variant::W2, Variant::W3],
            vertex_cap: DEFAULT_VERTEX_CAP,
            fiber_cap: DEFAULT_FIBER_CAP,
            diameter_threshold: DEFAULT_DIAMETER_THRESHOLD,
        }
    }

    #[test]
    fn scan_examples() {
        let empty = corollary_scan(&[], &options(vec![2, 3], vec![2]));
        assert!(empty.entries.is_empty());
        assert_eq!(empty.note, SCAN_NOTE);

        let report = corollary_scan(&[("U39".into(), u(3, 9))], &options(vec![3], vec![]));
        assert_eq!(report.entries.len(), 1);
        assert_eq!(report.entries[0].status, ScanStatus::Pass);
        assert!(report.entries[0].detail.starts_with("280 vertices"));

        let catalog = vec![("U24".to_string(), u(2, 4)), ("F".to_string(), five_basis())];
        let report = corollary_scan(&catalog, &options(vec![2, 3], vec![2]));
        assert_eq!(report.failed, 0);
        assert_eq!(report.skipped, 0);
        assert_eq!(report.not_applicable, 2);
        assert_eq!(report.passed, report.entries.len());
    }

    #[test]
    fn scan_caps_become_skips() {
        let mut opts = options(vec![3], vec![2]);
        opts.vertex_cap = 3;
        opts.fiber_cap = 3;
        let report = corollary_scan(&[("U26".into(), u(2, 6))], &opts);
        assert!(report.entries.iter().all(|e| e.status == ScanStatus::Skip));
    }
}
