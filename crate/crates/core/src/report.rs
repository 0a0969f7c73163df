//! Versioned JSON reports with replayable witnesses.
//!
//! Serialization goes through `serde_json::Value`, whose maps are ordered,
//! so keys come out sorted; witness lists are sorted before writing. Two
//! runs on the same input therefore produce identical bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bitset::ElementSet;
use crate::conjecture::{audit_noncomplementary_bound, BlowupLabeling};
use crate::error::{Error, Result};
use crate::fiber::{generation_path, replay, union_vector, Move};
use crate::graphs::{analyze, complementary_basis_graph, Vertices};
use crate::matroid::Matroid;
use crate::partition::BasePartition;

pub const SCHEMA_VERSION: u32 = 1;

/// Evidence attached to a report; each kind can be re-checked against the
/// input matroid by [`replay_witness`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Witness {
    /// A move sequence from `start` ending at `end`.
    Path {
        start: Vec<ElementSet>,
        moves: Vec<Move>,
        end: Vec<ElementSet>,
    },
    /// `partition` splits `ground` into bases.
    Partition { ground: ElementSet, partition: BasePartition },
    /// `k · rank < |set|`.
    Violation { set: ElementSet, k: usize, rank: usize },
    /// Two states of one fiber with no connecting path under `variant`.
    DisconnectedFiber {
        variant: crate::fiber::Variant,
        first: Vec<ElementSet>,
        second: Vec<ElementSet>,
    },
    /// Two complementary bases in different components of the complementary graph.
    DisconnectedComplementary {
        k: usize,
        modified: bool,
        first: ElementSet,
        second: ElementSet,
    },
    /// Partitions of `E \ x` and `E \ y` sharing `shared`.
    SharedBlock {
        #[serde(with = "one_based")]
        x: usize,
        #[serde(with = "one_based")]
        y: usize,
        shared: ElementSet,
        without_x: BasePartition,
        without_y: BasePartition,
    },
    Labeling { labeling: BlowupLabeling },
    /// Recount of non-complementary bases among `disjoint`.
    Audit {
        k: usize,
        s: usize,
        disjoint: Vec<ElementSet>,
        count: usize,
    },
}

mod one_based {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &usize, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(*v as u64 + 1)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<usize, D::Error> {
        match usize::deserialize(d)? {
            0 => Err(serde::de::Error::custom("elements are one-based")),
            v => Ok(v - 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Skipped {
    pub item: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub tool_version: String,
    /// Content hash of the input matroid, when there is one.
    pub input_hash: Option<String>,
    pub parameters: BTreeMap<String, Value>,
    pub result: Value,
    pub witnesses: Vec<Witness>,
    pub skipped: Vec<Skipped>,
    /// Wall-clock milliseconds; only present when requested, and never
    /// part of the canonical comparison.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(command: &str, input: Option<&Matroid>) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            input_hash: input.map(Matroid::content_hash),
            parameters: BTreeMap::new(),
            result: Value::Null,
            witnesses: Vec::new(),
            skipped: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.parameters.insert(
            key.to_string(),
            serde_json::to_value(value).expect("parameters serialize"),
        );
        self
    }

    /// Sorted keys, sorted witness and skip lists, two-space indentation,
    /// trailing newline.
    pub fn to_canonical_json(&self) -> String {
        let mut sorted = self.clone();
        sorted.skipped.sort();
        let mut keyed: Vec<(String, Witness)> = sorted
            .witnesses
            .into_iter()
            .map(|w| (serde_json::to_string(&w).expect("witness serializes"), w))
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        sorted.witnesses = keyed.into_iter().map(|(_, w)| w).collect();
        let value = serde_json::to_value(&sorted).expect("report serializes");
        let mut text = serde_json::to_string_pretty(&value).expect("value prints");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Report> {
        let report: Report =
            serde_json::from_str(text).map_err(|e| Error::Replay(format!("malformed report: {e}")))?;
        if report.schema != SCHEMA_VERSION {
            return Err(Error::Replay(format!("unsupported schema {}", report.schema)));
        }
        Ok(report)
    }
}

/// Re-checks every witness of `report` against `m`.
pub fn replay_report(report: &Report, m: &Matroid) -> Result<()> {
    if let Some(hash) = &report.input_hash {
        if *hash != m.content_hash() {
            return Err(Error::Replay(format!(
                "report is for matroid {hash}, input is {}",
                m.content_hash()
            )));
        }
    }
    for w in &report.witnesses {
        replay_witness(w, m)?;
    }
    Ok(())
}

/// Fiber searches during replay stop after this many states.
const REPLAY_CAP: usize = 1_000_000;

pub fn replay_witness(w: &Witness, m: &Matroid) -> Result<()> {
    let fail = |why: String| Err(Error::Replay(why));
    match w {
        Witness::Path { start, moves, end } => {
            let trace = replay(m, start, moves)?;
            if trace.last() != Some(end) {
                return fail("path does not end at the claimed state".into());
            }
        }
        Witness::Partition { ground, partition } => {
            if !partition.is_valid_for(m, *ground) {
                return fail(format!("partition does not split {ground} into bases"));
            }
        }
        Witness::Violation { set, k, rank } => {
            let actual = m.rank_of(*set)?;
            if actual != *rank || k * rank >= set.len() {
                return fail(format!("{set} has rank {actual}; no violation for k = {k}"));
            }
        }
        Witness::DisconnectedFiber { variant, first, second } => {
            if first.len() != second.len()
                || union_vector(m.ground_size(), first) != union_vector(m.ground_size(), second)
            {
                return fail("states lie in different fibers".into());
            }
            if generation_path(m, first, second, *variant, REPLAY_CAP)?.is_some() {
                return fail("the states are connected".into());
            }
        }
        Witness::DisconnectedComplementary {
            k,
            modified,
            first,
            second,
        } => {
            let g = complementary_basis_graph(m, *k, *modified, REPLAY_CAP)?;
            let Vertices::Bases(bases) = &g.vertices else {
                return fail("unexpected vertex type".into());
            };
            let (Ok(a), Ok(b)) = (bases.binary_search(first), bases.binary_search(second)) else {
                return fail("witness bases are not complementary".into());
            };
            let summary = analyze(&g, 0);
            if summary.is_connected {
                return fail("the complementary graph is connected".into());
            }
            // same component iff reachable; reuse the adjacency walk
            let adj = g.adjacency();
            let mut seen = vec![false; bases.len()];
            let mut stack = vec![a];
            seen[a] = true;
            while let Some(v) = stack.pop() {
                for &u in &adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            if seen[b] {
                return fail("witness bases are in one component".into());
            }
        }
        Witness::SharedBlock {
            x,
            y,
            shared,
            without_x,
            without_y,
        } => {
            let ground = m.ground();
            if !without_x.is_valid_for(m, ground.without(*x)) || !without_y.is_valid_for(m, ground.without(*y)) {
                return fail("shared-block partitions are invalid".into());
            }
            if !without_x.blocks.contains(shared) || !without_y.blocks.contains(shared) {
                return fail(format!("{shared} is not a block of both partitions"));
            }
        }
        Witness::Labeling { labeling } => labeling.verify(m)?,
        Witness::Audit { k, s, disjoint, count } => {
            let audit = audit_noncomplementary_bound(m, *k, *s, disjoint)?;
            if audit.count != *count {
                return fail(format!("recount gives {}, report claims {count}", audit.count));
            }
        }
    }
    Ok(())
}
