use thiserror::Error;

use crate::bitset::ElementSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the engine reports. Element sets render one-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("basis family is empty")]
    EmptyFamily,
    #[error("bases {first} and {second} have different cardinalities")]
    UnequalCardinality {
        first: ElementSet,
        second: ElementSet,
    },
    #[error("exchange axiom fails: no f in {b2}\\{b1} makes ({b1}\\{}) + f a basis", .e + 1)]
    ExchangeAxiomFailure {
        b1: ElementSet,
        b2: ElementSet,
        e: usize,
    },
    #[error("element {} is outside the ground set of size {ground_size}", .element + 1)]
    ElementOutOfRange { element: usize, ground_size: usize },
    #[error("ground set of size {0} exceeds the cap of 64 elements")]
    GroundSetTooLarge(usize),
    #[error("basis family would exceed {limit} members")]
    TooManyBases { limit: usize },
    #[error("invalid rank {rank} for a ground set of size {ground_size}")]
    InvalidRank { rank: usize, ground_size: usize },
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u64),
    #[error("matrix rows have inconsistent lengths")]
    RaggedMatrix,
    #[error("delete and contract sets overlap")]
    OverlappingArguments,
    #[error("contraction set {0} is dependent")]
    DependentContraction(ElementSet),
    #[error("no basis survives the minor")]
    RankCollapse,
    #[error("{0} is not a basis")]
    NotABasis(ElementSet),
    #[error("no symmetric exchange partner for element {} between {b1} and {b2}", .e + 1)]
    ElementNotExchangeable {
        b1: ElementSet,
        b2: ElementSet,
        e: usize,
    },
    #[error("morphism map is malformed: {0}")]
    MalformedMorphism(String),
    #[error("morphism property fails: representatives {choice} of target basis {target_basis} do not form a basis")]
    MorphismViolation {
        target_basis: ElementSet,
        choice: ElementSet,
    },
    #[error("matroid is not a {k}-matroid")]
    NotKMatroid { k: usize },
    #[error("multiplicity k must be at least 1")]
    InvalidMultiplicity,
    #[error("exhaustive rank check is capped at {cap} elements, got {size}")]
    CapExceeded { size: usize, cap: usize },
    #[error("graph would exceed {cap} vertices")]
    VertexCountCapExceeded { cap: usize },
    #[error("fiber enumeration would exceed {cap} states")]
    FiberCapExceeded { cap: usize },
    #[error("the k = 2 base-partition graph must be requested explicitly")]
    KBaseGraphNeedsFlag,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("bases are not pairwise disjoint")]
    NotDisjoint,
    #[error("ground set has {actual} elements, expected {expected}")]
    SizeMismatch { expected: usize, actual: usize },
    #[error("states have different union vectors")]
    UnionMismatch,
    #[error("entry {0} does not map to a basis of the target")]
    EntryNotMappedToBasis(ElementSet),
    #[error("cannot lift step {step}: {reason}")]
    LiftFailure { step: usize, reason: String },
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {source}")]
    InFile {
        line: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("catalog request out of range: {0}")]
    CatalogCapExceeded(String),
    #[error("report replay failed: {0}")]
    Replay(String),
}

impl Error {
    /// Strips file context, exposing the underlying matroid error.
    pub fn root(&self) -> &Error {
        match self {
            Error::InFile { source, .. } => source.root(),
            other => other,
        }
    }

    /// True for every cap-style error (the CLI maps these to exit code 3).
    pub fn is_cap(&self) -> bool {
        matches!(
            self.root(),
            Error::CapExceeded { .. }
                | Error::VertexCountCapExceeded { .. }
                | Error::FiberCapExceeded { .. }
                | Error::TooManyBases { .. }
                | Error::GroundSetTooLarge(_)
                | Error::CatalogCapExceeded(_)
        )
    }
}
