//! Matroid basis-exchange engine.
//!
//! Matroids are stored as explicit basis families over a ground set of at
//! most 64 elements. On top of that representation the crate provides
//! base partitioning (matroid union), the basis / complementary-basis /
//! k-base graphs, toric fibers of basis multisets and sequences with their
//! symmetric-exchange moves, and a set of per-instance checkers.

pub mod bitset;
pub mod catalog;
pub mod conjecture;
pub mod constructors;
pub mod error;
pub mod fiber;
pub mod format;
pub mod graphs;
pub mod matroid;
pub mod morphism;
pub mod partition;
pub mod report;
pub mod testing;

pub use bitset::ElementSet;
pub use error::{Error, Result};
pub use matroid::{ExchangeWitness, Matroid, Minor};
pub use morphism::{verify_morphism, MatroidMorphism};
pub use partition::{is_k_matroid, partition_into_bases, BasePartition, UnionViolation};
pub use fiber::{Move, Variant};
pub use format::{emit_matroid, parse_matroid, MatroidFile};
pub use report::{Report, Witness};
