//! Matroids given by an explicit basis family.

use sha2::{Digest, Sha256};

use crate::bitset::{ElementSet, MAX_GROUND};
use crate::error::{Error, Result};
use crate::morphism::MatroidMorphism;

/// Upper bound on the number of bases any constructor will materialise.
pub const MAX_BASES: usize = 1 << 22;

/// A matroid on `{0, .., n-1}` stored as its canonically sorted basis list.
///
/// Values are immutable once built; every constructor either validates the
/// exchange axiom or produces a family that satisfies it by construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matroid {
    ground_size: usize,
    rank: usize,
    /// Lexicographically sorted, deduplicated.
    bases: Vec<ElementSet>,
    /// Same family sorted by raw bits, for membership tests.
    lookup: Vec<u64>,
}

impl std::fmt::Debug for Matroid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Matroid(n={}, r={}, bases={:?})",
            self.ground_size,
            self.rank,
            self.bases.iter().map(|b| b.to_string()).collect::<Vec<_>>()
        )
    }
}

/// A symmetric exchange `e ∈ B1 \ B2`, `f ∈ B2 \ B1` and the resulting pair
/// `((B1 \ e) ∪ f, (B2 \ f) ∪ e)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExchangeWitness {
    pub e: usize,
    pub f: usize,
    pub first: ElementSet,
    pub second: ElementSet,
}

/// The result of [`Matroid::minor`]: the minor plus the map from its
/// elements back to the original ground set.
#[derive(Clone, Debug)]
pub struct Minor {
    pub matroid: Matroid,
    /// `original[i]` is the element of the parent that became element `i`.
    pub original: Vec<usize>,
}

impl Matroid {
    /// Validates a user-supplied basis family.
    ///
    /// The family is deduplicated and sorted; failures carry a witness.
    pub fn validate_bases<I>(ground_size: usize, family: I) -> Result<Matroid>
    where
        I: IntoIterator<Item = ElementSet>,
    {
        if ground_size > MAX_GROUND {
            return Err(Error::GroundSetTooLarge(ground_size));
        }
        let ground = ElementSet::full(ground_size);
        let mut bases: Vec<ElementSet> = Vec::new();
        for b in family {
            if !b.is_subset(ground) {
                let element = b.difference(ground).first().unwrap_or(0);
                return Err(Error::ElementOutOfRange {
                    element,
                    ground_size,
                });
            }
            if let Some(&first) = bases.first() {
                if first.len() != b.len() {
                    return Err(Error::UnequalCardinality { first, second: b });
                }
            }
            bases.push(b);
        }
        if bases.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let rank = bases[0].len();
        let m = Matroid::from_trusted(ground_size, rank, bases);
        m.check_exchange_axiom()?;
        Ok(m)
    }

    /// Builds a matroid from a family already known to satisfy the axioms.
    pub(crate) fn from_trusted(ground_size: usize, rank: usize, mut bases: Vec<ElementSet>) -> Matroid {
        bases.sort_unstable();
        bases.dedup();
        debug_assert!(bases.iter().all(|b| b.len() == rank));
        let mut lookup: Vec<u64> = bases.iter().map(|b| b.bits()).collect();
        lookup.sort_unstable();
        Matroid {
            ground_size,
            rank,
            bases,
            lookup,
        }
    }

    fn check_exchange_axiom(&self) -> Result<()> {
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                let only_in_b2 = b2.difference(b1);
                for e in b1.difference(b2) {
                    let reduced = b1.without(e);
                    if !only_in_b2.iter().any(|f| self.is_basis(reduced.with(f))) {
                        return Err(Error::ExchangeAxiomFailure { b1, b2, e });
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.ground_size)
    }

    #[inline]
    pub fn bases(&self) -> &[ElementSet] {
        &self.bases
    }

    #[inline]
    pub fn basis_count(&self) -> usize {
        self.bases.len()
    }

    #[inline]
    pub fn is_basis(&self, set: ElementSet) -> bool {
        self.lookup.binary_search(&set.bits()).is_ok()
    }

    /// Position of a basis in the canonical list.
    pub fn basis_index(&self, set: ElementSet) -> Option<usize> {
        self.bases.binary_search(&set).ok()
    }

    pub fn check_subset(&self, set: ElementSet) -> Result<()> {
        match set.difference(self.ground()).first() {
            None => Ok(()),
            Some(element) => Err(Error::ElementOutOfRange {
                element,
                ground_size: self.ground_size,
            }),
        }
    }

    /// Rank of `set`: the largest `|B ∩ set|` over all bases.
    pub fn rank_of(&self, set: ElementSet) -> Result<usize> {
        self.check_subset(set)?;
        Ok(self.rank_unchecked(set))
    }

    pub(crate) fn rank_unchecked(&self, set: ElementSet) -> usize {
        let ceiling = set.len().min(self.rank);
        let mut best = 0;
        for b in &self.bases {
            let c = b.intersection(set).len();
            if c > best {
                best = c;
                if best == ceiling {
                    break;
                }
            }
        }
        best
    }

    /// Independent means contained in some basis.
    pub fn is_independent(&self, set: ElementSet) -> bool {
        set.len() <= self.rank && self.bases.iter().any(|b| set.is_subset(*b))
    }

    /// Elements lying in no basis.
    pub fn loops(&self) -> ElementSet {
        let covered = self
            .bases
            .iter()
            .fold(ElementSet::EMPTY, |acc, b| acc.union(*b));
        self.ground().difference(covered)
    }

    /// Elements lying in every basis.
    pub fn coloops(&self) -> ElementSet {
        self.bases
            .iter()
            .fold(self.ground(), |acc, b| acc.intersection(*b))
    }

    /// The minor `M \ delete / contract`, re-indexed onto `0..n'` in
    /// increasing order of the surviving elements.
    pub fn minor(&self, delete: ElementSet, contract: ElementSet) -> Result<Minor> {
        self.check_subset(delete)?;
        self.check_subset(contract)?;
        if !delete.is_disjoint(contract) {
            return Err(Error::OverlappingArguments);
        }
        if !self.is_independent(contract) {
            return Err(Error::DependentContraction(contract));
        }
        let survivors = self.ground().difference(delete.union(contract));
        let original = survivors.to_vec();
        let mut new_index = vec![usize::MAX; self.ground_size];
        for (i, &e) in original.iter().enumerate() {
            new_index[e] = i;
        }
        let bases: Vec<ElementSet> = self
            .bases
            .iter()
            .filter(|b| contract.is_subset(**b) && b.is_disjoint(delete))
            .map(|b| b.difference(contract).map_elements(&new_index))
            .collect();
        if bases.is_empty() {
            return Err(Error::RankCollapse);
        }
        let matroid = Matroid::from_trusted(original.len(), self.rank - contract.len(), bases);
        Ok(Minor { matroid, original })
    }

    /// Restriction to `keep`; fails with `RankCollapse` if `keep` is not spanning.
    pub fn restrict(&self, keep: ElementSet) -> Result<Minor> {
        self.minor(self.ground().difference(keep), ElementSet::EMPTY)
    }

    /// Replaces every element of `blown` by `k` parallel copies.
    ///
    /// Copies of an element are consecutive in the new ground set, so blowing
    /// up by `a` and then by `b` gives literally the same matroid as blowing up
    /// by `a * b`. The returned morphism collapses copies onto their origin.
    pub fn blow_up(&self, blown: ElementSet, k: usize) -> Result<(Matroid, MatroidMorphism)> {
        self.check_subset(blown)?;
        if k == 0 {
            return Err(Error::InvalidMultiplicity);
        }
        let new_size = self.ground_size + blown.len() * (k - 1);
        if new_size > MAX_GROUND {
            return Err(Error::GroundSetTooLarge(new_size));
        }
        let mut map = Vec::with_capacity(new_size);
        let mut copies: Vec<Vec<usize>> = Vec::with_capacity(self.ground_size);
        for e in 0..self.ground_size {
            let count = if blown.contains(e) { k } else { 1 };
            copies.push((map.len()..map.len() + count).collect());
            map.extend(std::iter::repeat_n(e, count));
        }
        let mut total: usize = 0;
        for b in &self.bases {
            let per = k.checked_pow(b.intersection(blown).len() as u32).unwrap_or(usize::MAX);
            total = total.saturating_add(per);
        }
        if total > MAX_BASES {
            return Err(Error::TooManyBases { limit: MAX_BASES });
        }
        let mut bases = Vec::with_capacity(total);
        for b in &self.bases {
            let elements = b.to_vec();
            expand_choices(&elements, &copies, 0, ElementSet::EMPTY, &mut bases);
        }
        let blown_up = Matroid::from_trusted(new_size, self.rank, bases);
        let morphism = MatroidMorphism::from_trusted(blown_up.clone(), self.clone(), map);
        Ok((blown_up, morphism))
    }

    /// Every `f ∈ B2 \ B1` that exchanges symmetrically with `e ∈ B1 \ B2`.
    pub fn symmetric_exchange_partners(
        &self,
        b1: ElementSet,
        b2: ElementSet,
        e: usize,
    ) -> Result<Vec<ExchangeWitness>> {
        for b in [b1, b2] {
            if !self.is_basis(b) {
                return Err(Error::NotABasis(b));
            }
        }
        if !b1.contains(e) || b2.contains(e) {
            return Err(Error::InvalidParameter(format!(
                "element {} is not in {b1} \\ {b2}",
                e + 1
            )));
        }
        let found = self.exchange_partners_unchecked(b1, b2, e);
        if found.is_empty() {
            return Err(Error::ElementNotExchangeable { b1, b2, e });
        }
        Ok(found)
    }

    pub(crate) fn exchange_partners_unchecked(
        &self,
        b1: ElementSet,
        b2: ElementSet,
        e: usize,
    ) -> Vec<ExchangeWitness> {
        b2.difference(b1)
            .iter()
            .filter_map(|f| {
                let first = b1.exchange(e, f);
                let second = b2.exchange(f, e);
                (self.is_basis(first) && self.is_basis(second)).then_some(ExchangeWitness {
                    e,
                    f,
                    first,
                    second,
                })
            })
            .collect()
    }

    /// Relabels elements: element `e` becomes `perm[e]`.
    pub fn relabel(&self, perm: &[usize]) -> Matroid {
        let bases = self.bases.iter().map(|b| b.map_elements(perm)).collect();
        Matroid::from_trusted(self.ground_size, self.rank, bases)
    }

    /// Stable content hash (hex, 16 characters) of `(n, r, bases)`.
    pub fn content_hash(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update((self.ground_size as u64).to_le_bytes());
        hasher.update((self.rank as u64).to_le_bytes());
        for b in &self.bases {
            hasher.update(b.bits().to_le_bytes());
        }
        let digest = hasher.finalize();
        hex::encode(&digest[..8])
    }
}

fn expand_choices(
    elements: &[usize],
    copies: &[Vec<usize>],
    at: usize,
    acc: ElementSet,
    out: &mut Vec<ElementSet>,
) {
    if at == elements.len() {
        out.push(acc);
        return;
    }
    for &c in &copies[elements[at]] {
        expand_choices(elements, copies, at + 1, acc.with(c), out);
    }
}
