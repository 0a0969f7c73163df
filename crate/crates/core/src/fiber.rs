//! Toric fibers: multisets (or sequences) of bases with a fixed union vector,
//! and the moves that connect them.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::morphism::MatroidMorphism;

pub const DEFAULT_FIBER_CAP: usize = 1_000_000;

/// Which moves connect fiber states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    /// Replace two entries by any two bases with the same multiset union.
    W1,
    /// Symmetric exchange between any two entries.
    W2,
    /// Symmetric exchange between adjacent entries of a sequence; the
    /// resulting pair may be placed in either order.
    W3,
    /// As `W3`, but the exchanged pair keeps its positions.
    W3Strict,
}

impl Variant {
    /// Whether states are sequences rather than multisets.
    pub fn is_ordered(self) -> bool {
        matches!(self, Variant::W3 | Variant::W3Strict)
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::W1 => "w1",
            Variant::W2 => "w2",
            Variant::W3 => "w3",
            Variant::W3Strict => "w3-strict",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "w1" => Ok(Variant::W1),
            "w2" => Ok(Variant::W2),
            "w3" => Ok(Variant::W3),
            "w3-strict" | "w3strict" => Ok(Variant::W3Strict),
            other => Err(Error::InvalidParameter(format!("unknown variant `{other}`"))),
        }
    }
}

/// `u(e)` = number of entries containing `e`.
pub fn union_vector(ground_size: usize, entries: &[ElementSet]) -> Vec<u32> {
    let mut u = vec![0u32; ground_size];
    for b in entries {
        for e in *b {
            u[e] += 1;
        }
    }
    u
}

/// Sorted copy for multiset variants, unchanged for sequences.
pub fn canonical_state(entries: &[ElementSet], variant: Variant) -> Vec<ElementSet> {
    let mut out = entries.to_vec();
    if !variant.is_ordered() {
        out.sort_unstable();
    }
    out
}

/// One step between fiber states.
///
/// Entries `positions.0` and `positions.1` of the (canonical) state, holding
/// `before`, are replaced by `after` in the same positions; multiset states
/// are re-sorted afterwards. For exchange variants `exchange = (e, f)` means
/// `e` left the first entry and `f` the second.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Move {
    pub variant: Variant,
    pub positions: (usize, usize),
    pub before: (ElementSet, ElementSet),
    pub after: (ElementSet, ElementSet),
    #[serde(with = "one_based_pair")]
    pub exchange: Option<(usize, usize)>,
}

mod one_based_pair {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<(usize, usize)>, s: S) -> Result<S::Ok, S::Error> {
        v.map(|(e, f)| (e + 1, f + 1)).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<(usize, usize)>, D::Error> {
        let v = Option::<(usize, usize)>::deserialize(d)?;
        match v {
            Some((0, _)) | Some((_, 0)) => Err(serde::de::Error::custom("elements are one-based")),
            Some((e, f)) => Ok(Some((e - 1, f - 1))),
            None => Ok(None),
        }
    }
}

impl Move {
    /// Applies the move, checking that the state holds `before` at `positions`.
    pub fn apply(&self, state: &[ElementSet]) -> Result<Vec<ElementSet>> {
        let (i, j) = self.positions;
        if i == j || i >= state.len() || j >= state.len() {
            return Err(Error::InvalidMove(format!(
                "positions ({i}, {j}) do not fit a state of {} entries",
                state.len()
            )));
        }
        if (state[i], state[j]) != self.before {
            return Err(Error::InvalidMove(format!(
                "state holds ({}, {}) at ({i}, {j}), move expects ({}, {})",
                state[i], state[j], self.before.0, self.before.1
            )));
        }
        let mut out = state.to_vec();
        out[i] = self.after.0;
        out[j] = self.after.1;
        if !self.variant.is_ordered() {
            out.sort_unstable();
        }
        Ok(out)
    }

    /// Checks the move against the matroid and its variant's rules.
    pub fn validate(&self, m: &Matroid) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidMove(why.to_string()));
        let (b1, b2) = self.before;
        let (d1, d2) = self.after;
        for b in [b1, b2, d1, d2] {
            if !m.is_basis(b) {
                return Err(Error::NotABasis(b));
            }
        }
        if b1.union(b2) != d1.union(d2) || b1.intersection(b2) != d1.intersection(d2) {
            return bad("the pair union changes");
        }
        let same = if self.variant.is_ordered() {
            (d1, d2) == (b1, b2)
        } else {
            (d1.min(d2), d1.max(d2)) == (b1.min(b2), b1.max(b2))
        };
        if same {
            return bad("the move does not change the state");
        }
        if self.variant.is_ordered() && self.positions.1 != self.positions.0 + 1 {
            return bad("sequence moves act on adjacent positions");
        }
        if self.variant == Variant::W1 {
            return Ok(());
        }
        let Some((e, f)) = self.exchange else {
            return bad("exchange moves need an exchange witness");
        };
        if !b1.contains(e) || b2.contains(e) || !b2.contains(f) || b1.contains(f) {
            return bad("witness elements are not in the set differences");
        }
        let result = (b1.exchange(e, f), b2.exchange(f, e));
        let matches = match self.variant {
            Variant::W3 => (d1, d2) == result || (d2, d1) == result,
            _ => (d1, d2) == result,
        };
        if matches {
            Ok(())
        } else {
            bad("the replacement does not come from the stated exchange")
        }
    }
}

fn check_state(m: &Matroid, state: &[ElementSet]) -> Result<()> {
    match state.iter().find(|b| !m.is_basis(**b)) {
        Some(&b) => Err(Error::NotABasis(b)),
        None => Ok(()),
    }
}

/// Calls `visit` on every one-move neighbour, possibly more than once per
/// resulting state; self-loops are skipped.
fn for_each_neighbor(
    m: &Matroid,
    state: &[ElementSet],
    variant: Variant,
    mut visit: impl FnMut(Move, Vec<ElementSet>),
) {
    let d = state.len();
    let mut emit = |i: usize, j: usize, after: (ElementSet, ElementSet), exchange| {
        let mv = Move {
            variant,
            positions: (i, j),
            before: (state[i], state[j]),
            after,
            exchange,
        };
        let mut next = state.to_vec();
        next[i] = after.0;
        next[j] = after.1;
        if !variant.is_ordered() {
            next.sort_unstable();
        }
        if next != state {
            visit(mv, next);
        }
    };
    match variant {
        Variant::W1 => {
            for i in 0..d {
                for j in i + 1..d {
                    let (b1, b2) = (state[i], state[j]);
                    if b1 == b2 || (i > 0 && state[i - 1] == b1) || (j > i + 1 && state[j - 1] == b2) {
                        continue;
                    }
                    let both = b1.intersection(b2);
                    let diff = b1.symmetric_difference(b2);
                    for part in diff.subsets_of_size(m.rank() - both.len()) {
                        let (d1, d2) = (both.union(part), both.union(diff.difference(part)));
                        if d1 < d2 && m.is_basis(d1) && m.is_basis(d2) {
                            emit(i, j, (d1, d2), None);
                        }
                    }
                }
            }
        }
        Variant::W2 => {
            for i in 0..d {
                for j in i + 1..d {
                    let (b1, b2) = (state[i], state[j]);
                    // identical entries give identical neighbours
                    if b1 == b2 || (i > 0 && state[i - 1] == b1) || (j > i + 1 && state[j - 1] == b2) {
                        continue;
                    }
                    for e in b1.difference(b2) {
                        for w in m.exchange_partners_unchecked(b1, b2, e) {
                            emit(i, j, (w.first, w.second), Some((w.e, w.f)));
                        }
                    }
                }
            }
        }
        Variant::W3 | Variant::W3Strict => {
            for i in 0..d.saturating_sub(1) {
                let (b1, b2) = (state[i], state[i + 1]);
                if b1 == b2 {
                    continue;
                }
                for e in b1.difference(b2) {
                    for w in m.exchange_partners_unchecked(b1, b2, e) {
                        emit(i, i + 1, (w.first, w.second), Some((w.e, w.f)));
                        if variant == Variant::W3 {
                            emit(i, i + 1, (w.second, w.first), Some((w.e, w.f)));
                        }
                    }
                }
            }
        }
    }
}

/// All states one move away, each with one move reaching it, in state order.
pub fn neighbors(m: &Matroid, state: &[ElementSet], variant: Variant) -> Result<Vec<(Move, Vec<ElementSet>)>> {
    check_state(m, state)?;
    let state = canonical_state(state, variant);
    let mut found: BTreeMap<Vec<ElementSet>, Move> = BTreeMap::new();
    for_each_neighbor(m, &state, variant, |mv, next| {
        found.entry(next).or_insert(mv);
    });
    Ok(found.into_iter().map(|(s, mv)| (mv, s)).collect())
}

/// All multisets of `d` bases with union vector `u`, sorted, in lexicographic order.
pub fn enumerate_fiber(m: &Matroid, u: &[u32], d: usize, cap: usize) -> Result<Vec<Vec<ElementSet>>> {
    if u.len() != m.ground_size() {
        return Err(Error::SizeMismatch {
            expected: m.ground_size(),
            actual: u.len(),
        });
    }
    let total: u64 = u.iter().map(|&x| x as u64).sum();
    if total != (d * m.rank()) as u64 || u.iter().any(|&x| x as usize > d) {
        return Ok(Vec::new());
    }
    let mut residual = u.to_vec();
    let mut stack = Vec::with_capacity(d);
    let mut out = Vec::new();
    fill_fiber(m, &mut residual, d, 0, cap, &mut stack, &mut out)?;
    Ok(out)
}

fn fill_fiber(
    m: &Matroid,
    residual: &mut [u32],
    remaining: usize,
    from: usize,
    cap: usize,
    stack: &mut Vec<ElementSet>,
    out: &mut Vec<Vec<ElementSet>>,
) -> Result<()> {
    if remaining == 0 {
        if out.len() >= cap {
            return Err(Error::FiberCapExceeded { cap });
        }
        out.push(stack.clone());
        return Ok(());
    }
    let mut support = ElementSet::EMPTY;
    let mut forced = ElementSet::EMPTY;
    for (e, &x) in residual.iter().enumerate() {
        if x > 0 {
            support = support.with(e);
        }
        if x as usize == remaining {
            forced = forced.with(e);
        }
    }
    for (idx, &b) in m.bases().iter().enumerate().skip(from) {
        if !b.is_subset(support) || !forced.is_subset(b) {
            continue;
        }
        for e in b {
            residual[e] -= 1;
        }
        stack.push(b);
        let r = fill_fiber(m, residual, remaining - 1, idx, cap, stack, out);
        stack.pop();
        for e in b {
            residual[e] += 1;
        }
        r?;
    }
    Ok(())
}

/// All `d`-multisets of bases grouped by union vector.
pub fn fibers_of_degree(
    m: &Matroid,
    d: usize,
    cap: usize,
) -> Result<BTreeMap<Vec<u32>, Vec<Vec<ElementSet>>>> {
    let mut buckets: BTreeMap<Vec<u32>, Vec<Vec<ElementSet>>> = BTreeMap::new();
    let mut idx = vec![0usize; d];
    let bases = m.bases();
    let mut count = 0usize;
    loop {
        if count >= cap {
            return Err(Error::FiberCapExceeded { cap });
        }
        count += 1;
        let state: Vec<ElementSet> = idx.iter().map(|&i| bases[i]).collect();
        buckets
            .entry(union_vector(m.ground_size(), &state))
            .or_default()
            .push(state);
        // next nondecreasing index tuple
        let Some(pos) = (0..d).rev().find(|&p| idx[p] + 1 < bases.len()) else {
            break;
        };
        let v = idx[pos] + 1;
        idx[pos..].iter_mut().for_each(|x| *x = v);
    }
    Ok(buckets)
}

/// Every distinct ordering of every multiset, in lexicographic order.
pub fn sequences_of(multisets: &[Vec<ElementSet>], cap: usize) -> Result<Vec<Vec<ElementSet>>> {
    let mut out = Vec::new();
    for ms in multisets {
        let mut perm = ms.clone();
        perm.sort_unstable();
        loop {
            if out.len() >= cap {
                return Err(Error::FiberCapExceeded { cap });
            }
            out.push(perm.clone());
            if !next_permutation(&mut perm) {
                break;
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Connected components of a fiber whose vertex list is known; returns a
/// component label per vertex (labels in order of first appearance).
pub fn fiber_components(m: &Matroid, vertices: &[Vec<ElementSet>], variant: Variant) -> Vec<usize> {
    let index: HashMap<&[ElementSet], usize> =
        vertices.iter().enumerate().map(|(i, v)| (v.as_slice(), i)).collect();
    let mut label = vec![usize::MAX; vertices.len()];
    let mut next_label = 0;
    for start in 0..vertices.len() {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = next_label;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for_each_neighbor(m, &vertices[v], variant, |_, next| {
                let w = *index
                    .get(next.as_slice())
                    .expect("moves stay inside the fiber");
                if label[w] == usize::MAX {
                    label[w] = next_label;
                    queue.push_back(w);
                }
            });
        }
        next_label += 1;
    }
    label
}

/// A disconnected fiber: two states with the same union vector and no path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FiberCounterexample {
    pub union_vector: Vec<u32>,
    pub first: Vec<ElementSet>,
    pub second: Vec<ElementSet>,
    pub fiber_size: usize,
    pub component_count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WhiteReport {
    pub variant: Variant,
    pub degree: usize,
    pub fibers_total: usize,
    pub fibers_connected: usize,
    pub states_total: usize,
    pub largest_fiber: usize,
    /// Sorted by union vector.
    pub counterexamples: Vec<FiberCounterexample>,
}

impl WhiteReport {
    pub fn all_connected(&self) -> bool {
        self.fibers_connected == self.fibers_total
    }
}

/// Builds every degree-`d` fiber of `m` and checks each for connectivity
/// under `variant`. Fibers are processed in parallel on the current rayon
/// pool; the report does not depend on the pool size.
pub fn check_white_degree(m: &Matroid, d: usize, variant: Variant, cap: usize) -> Result<WhiteReport> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("degree must be at least 2, got {d}")));
    }
    let buckets = fibers_of_degree(m, d, cap)?;
    let outcomes: Vec<Result<(usize, Option<FiberCounterexample>)>> = buckets
        .par_iter()
        .map(|(u, states)| {
            let vertices = if variant.is_ordered() {
                sequences_of(states, cap)?
            } else {
                states.clone()
            };
            let labels = fiber_components(m, &vertices, variant);
            let components = labels.iter().max().map_or(0, |&l| l + 1);
            let witness = (components > 1).then(|| {
                let other = labels.iter().position(|&l| l != 0).expect("second component");
                FiberCounterexample {
                    union_vector: u.clone(),
                    first: vertices[0].clone(),
                    second: vertices[other].clone(),
                    fiber_size: vertices.len(),
                    component_count: components,
                }
            });
            Ok((vertices.len(), witness))
        })
        .collect();
    let mut report = WhiteReport {
        variant,
        degree: d,
        fibers_total: 0,
        fibers_connected: 0,
        states_total: 0,
        largest_fiber: 0,
        counterexamples: Vec::new(),
    };
    for outcome in outcomes {
        let (size, witness) = outcome?;
        report.fibers_total += 1;
        report.states_total += size;
        report.largest_fiber = report.largest_fiber.max(size);
        match witness {
            Some(w) => report.counterexamples.push(w),
            None => report.fibers_connected += 1,
        }
    }
    Ok(report)
}

/// Breadth-first search from `start`; returns visited states with the move
/// that first reached each (in discovery order) or stops at `goal`.
fn bfs(
    m: &Matroid,
    start: Vec<ElementSet>,
    goal: Option<&[ElementSet]>,
    variant: Variant,
    cap: usize,
) -> Result<(Vec<Vec<ElementSet>>, Vec<Option<(usize, Move)>>, Option<usize>)> {
    let mut states = vec![start.clone()];
    let mut parent: Vec<Option<(usize, Move)>> = vec![None];
    let mut seen: HashMap<Vec<ElementSet>, usize> = HashMap::from([(start, 0)]);
    if goal == Some(states[0].as_slice()) {
        return Ok((states, parent, Some(0)));
    }
    let mut head = 0;
    while head < states.len() {
        let current = states[head].clone();
        let mut found = None;
        let mut overflow = false;
        for_each_neighbor(m, &current, variant, |mv, next| {
            if found.is_some() || overflow || seen.contains_key(&next) {
                return;
            }
            if states.len() >= cap {
                overflow = true;
                return;
            }
            let id = states.len();
            if goal == Some(next.as_slice()) {
                found = Some(id);
            }
            seen.insert(next.clone(), id);
            states.push(next);
            parent.push(Some((head, mv)));
        });
        if found.is_some() {
            return Ok((states, parent, found));
        }
        if overflow {
            return Err(Error::FiberCapExceeded { cap });
        }
        head += 1;
    }
    Ok((states, parent, None))
}

/// Shortest move sequence from `s1` to `s2`, or `None` if they lie in
/// different components of their fiber.
pub fn generation_path(
    m: &Matroid,
    s1: &[ElementSet],
    s2: &[ElementSet],
    variant: Variant,
    cap: usize,
) -> Result<Option<Vec<Move>>> {
    check_state(m, s1)?;
    check_state(m, s2)?;
    if s1.len() != s2.len() {
        return Err(Error::SizeMismatch {
            expected: s1.len(),
            actual: s2.len(),
        });
    }
    if union_vector(m.ground_size(), s1) != union_vector(m.ground_size(), s2) {
        return Err(Error::UnionMismatch);
    }
    let (a, b) = (canonical_state(s1, variant), canonical_state(s2, variant));
    let (_, parent, found) = bfs(m, a, Some(&b), variant, cap)?;
    Ok(found.map(|mut at| {
        let mut moves = Vec::new();
        while let Some((prev, mv)) = &parent[at] {
            moves.push(mv.clone());
            at = *prev;
        }
        moves.reverse();
        moves
    }))
}

/// Replays moves from `start`, returning every intermediate state
/// (including `start`).
pub fn replay(m: &Matroid, start: &[ElementSet], moves: &[Move]) -> Result<Vec<Vec<ElementSet>>> {
    check_state(m, start)?;
    let ordered = moves.first().is_some_and(|mv| mv.variant.is_ordered());
    let mut current = if ordered {
        start.to_vec()
    } else {
        canonical_state(start, Variant::W2)
    };
    let mut trace = vec![current.clone()];
    for mv in moves {
        mv.validate(m)?;
        current = mv.apply(&current)?;
        trace.push(current.clone());
    }
    Ok(trace)
}

/// Pads both states of the binomial with `r·n` copies of `basis` (`n` its
/// degree) and asks whether they become W2-connected.
pub fn saturation_check(
    m: &Matroid,
    s1: &[ElementSet],
    s2: &[ElementSet],
    basis: ElementSet,
    cap: usize,
) -> Result<bool> {
    if !m.is_basis(basis) {
        return Err(Error::NotABasis(basis));
    }
    let pad = |s: &[ElementSet]| {
        let mut out = s.to_vec();
        out.extend(std::iter::repeat_n(basis, m.rank() * s.len()));
        out
    };
    Ok(generation_path(m, &pad(s1), &pad(s2), Variant::W2, cap)?.is_some())
}

/// [`saturation_check`] for every pair of one fiber at once: all padded
/// states must land in a single W2 component.
pub fn saturation_check_fiber(
    m: &Matroid,
    fiber: &[Vec<ElementSet>],
    basis: ElementSet,
    cap: usize,
) -> Result<bool> {
    if !m.is_basis(basis) {
        return Err(Error::NotABasis(basis));
    }
    let Some(first) = fiber.first() else {
        return Ok(true);
    };
    let pad = |s: &[ElementSet]| {
        let mut out = s.to_vec();
        out.extend(std::iter::repeat_n(basis, m.rank() * s.len()));
        out.sort_unstable();
        out
    };
    let (reached, _, _) = bfs(m, pad(first), None, Variant::W2, cap)?;
    let reached: std::collections::HashSet<Vec<ElementSet>> = reached.into_iter().collect();
    Ok(fiber.iter().all(|s| reached.contains(&pad(s))))
}

/// Image of a state under a morphism, sorted.
pub fn image_state(psi: &MatroidMorphism, state: &[ElementSet]) -> Vec<ElementSet> {
    let mut out: Vec<ElementSet> = state.iter().map(|b| psi.image(*b)).collect();
    out.sort_unstable();
    out
}

/// Lifts a W2 path in the target of `psi` to a W2 path in its source
/// starting at `s1`. With `target`, a final segment of copy swaps inside
/// the preimage is appended so the lifted path ends at `target`.
pub fn lift_path(
    psi: &MatroidMorphism,
    s1: &[ElementSet],
    image_path: &[Move],
    target: Option<&[ElementSet]>,
) -> Result<Vec<Move>> {
    let (source, image) = (psi.source(), psi.target());
    let map = psi.map();
    check_state(source, s1)?;
    for &b in s1 {
        if psi.image_basis(b).is_none() {
            return Err(Error::EntryNotMappedToBasis(b));
        }
    }
    let mut state = canonical_state(s1, Variant::W2);
    let mut image_current = image_state(psi, &state);
    let mut lifted = Vec::with_capacity(image_path.len());

    for (step, mv) in image_path.iter().enumerate() {
        if mv.variant != Variant::W2 {
            return Err(Error::InvalidMove(format!("step {step} is not a W2 move")));
        }
        mv.validate(image)?;
        let next_image = mv.apply(&image_current)?;
        let (e_img, f_img) = mv.exchange.expect("validated W2 move has a witness");
        let fail = |reason: String| Error::LiftFailure { step, reason };

        let p = state
            .iter()
            .position(|b| psi.image(*b) == mv.before.0)
            .ok_or_else(|| fail(format!("no entry over {}", mv.before.0)))?;
        let q = (0..state.len())
            .find(|&q| q != p && psi.image(state[q]) == mv.before.1)
            .ok_or_else(|| fail(format!("no second entry over {}", mv.before.1)))?;
        let pick = |b: ElementSet, target_elem: usize| b.iter().find(|&x| map[x] == target_elem);
        let e = pick(state[p], e_img).ok_or_else(|| fail("exchanged element has no preimage".into()))?;
        let f = pick(state[q], f_img).ok_or_else(|| fail("partner element has no preimage".into()))?;
        let after = (state[p].exchange(e, f), state[q].exchange(f, e));
        if !source.is_basis(after.0) || !source.is_basis(after.1) {
            return Err(fail("a representative choice is not a basis".into()));
        }
        let lifted_move = Move {
            variant: Variant::W2,
            positions: (p, q),
            before: (state[p], state[q]),
            after,
            exchange: Some((e, f)),
        };
        state = lifted_move.apply(&state)?;
        if image_state(psi, &state) != next_image {
            return Err(fail("lifted state lies over the wrong image".into()));
        }
        image_current = next_image;
        lifted.push(lifted_move);
    }

    if let Some(target) = target {
        let step = image_path.len();
        let fail = |reason: &str| Error::LiftFailure {
            step,
            reason: reason.to_string(),
        };
        check_state(source, target)?;
        if image_state(psi, target) != image_current {
            return Err(fail("target lies over a different image state"));
        }
        if union_vector(source.ground_size(), target) != union_vector(source.ground_size(), &state) {
            return Err(fail("target lies in a different fiber"));
        }
        lifted.extend(copy_swaps(psi, &state, target).map_err(|r| fail(&r))?);
    }
    Ok(lifted)
}

/// W2 moves turning `from` into `to`, where both lie over the same image
/// state and share a union vector: entries are paired by image and copies
/// are traded between entries until every pair agrees.
fn copy_swaps(
    psi: &MatroidMorphism,
    from: &[ElementSet],
    to: &[ElementSet],
) -> std::result::Result<Vec<Move>, String> {
    let map = psi.map();
    let by_image = |s: &[ElementSet]| {
        let mut v: Vec<(ElementSet, ElementSet)> = s.iter().map(|b| (psi.image(*b), *b)).collect();
        v.sort_unstable();
        v.into_iter().map(|(_, b)| b).collect::<Vec<_>>()
    };
    let mut cur = by_image(from);
    let goal = by_image(to);
    let mut moves = Vec::new();
    while let Some(p) = (0..cur.len()).find(|&p| cur[p] != goal[p]) {
        let x = cur[p].difference(goal[p]).first().expect("entries differ");
        let y = goal[p]
            .iter()
            .find(|&y| map[y] == map[x])
            .ok_or("paired entries lie over different bases")?;
        let q = (0..cur.len())
            .find(|&q| q != p && cur[q].contains(y) && !goal[q].contains(y))
            .ok_or("no entry can give up the needed copy")?;
        let after = (cur[p].exchange(x, y), cur[q].exchange(y, x));
        if !psi.source().is_basis(after.0) || !psi.source().is_basis(after.1) {
            return Err("a representative choice is not a basis".into());
        }
        let mut sorted = cur.clone();
        sorted.sort_unstable();
        let i = sorted.binary_search(&cur[p]).expect("entry present");
        let j = sorted.binary_search(&cur[q]).expect("entry present");
        moves.push(Move {
            variant: Variant::W2,
            positions: (i, j),
            before: (cur[p], cur[q]),
            after,
            exchange: Some((x, y)),
        });
        cur[p] = after.0;
        cur[q] = after.1;
    }
    Ok(moves)
}
