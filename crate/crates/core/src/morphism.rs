//! Ground-set maps between matroids of equal rank that pull bases back.

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::matroid::Matroid;

/// A map `ψ: E → E'` such that for every basis `B'` of the target, every
/// choice of one element from each fibre `ψ⁻¹(b')`, `b' ∈ B'`, is a basis
/// of the source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatroidMorphism {
    source: Matroid,
    target: Matroid,
    map: Vec<usize>,
}

impl MatroidMorphism {
    /// Checks the morphism property and wraps the map.
    pub fn new(source: Matroid, target: Matroid, map: Vec<usize>) -> Result<Self> {
        verify_morphism(&source, &target, &map)?;
        Ok(MatroidMorphism {
            source,
            target,
            map,
        })
    }

    pub(crate) fn from_trusted(source: Matroid, target: Matroid, map: Vec<usize>) -> Self {
        debug_assert!(verify_morphism(&source, &target, &map).is_ok());
        MatroidMorphism {
            source,
            target,
            map,
        }
    }

    pub fn source(&self) -> &Matroid {
        &self.source
    }

    pub fn target(&self) -> &Matroid {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Image of a set (as a set, multiplicities dropped).
    pub fn image(&self, set: ElementSet) -> ElementSet {
        set.map_elements(&self.map)
    }

    /// `ψ⁻¹(b')`.
    pub fn preimage(&self, element: usize) -> ElementSet {
        self.map
            .iter()
            .enumerate()
            .filter(|(_, &t)| t == element)
            .map(|(s, _)| s)
            .collect()
    }

    /// Image of a source basis, provided `ψ` is injective on it and the
    /// image is a target basis.
    pub fn image_basis(&self, set: ElementSet) -> Option<ElementSet> {
        let img = self.image(set);
        (img.len() == set.len() && self.target.is_basis(img)).then_some(img)
    }
}

/// Checks the morphism property of `map: source → target`.
///
/// On failure the error carries the target basis and the offending choice
/// of representatives.
pub fn verify_morphism(source: &Matroid, target: &Matroid, map: &[usize]) -> Result<()> {
    if map.len() != source.ground_size() {
        return Err(Error::MalformedMorphism(format!(
            "map has {} entries for a ground set of {}",
            map.len(),
            source.ground_size()
        )));
    }
    if let Some(&bad) = map.iter().find(|&&t| t >= target.ground_size()) {
        return Err(Error::MalformedMorphism(format!(
            "element {} is outside the target ground set",
            bad + 1
        )));
    }
    if source.rank() != target.rank() {
        return Err(Error::MalformedMorphism(format!(
            "ranks differ ({} vs {})",
            source.rank(),
            target.rank()
        )));
    }
    let mut fibres = vec![ElementSet::EMPTY; target.ground_size()];
    for (s, &t) in map.iter().enumerate() {
        fibres[t] = fibres[t].with(s);
    }
    for &target_basis in target.bases() {
        let parts: Vec<ElementSet> = target_basis.iter().map(|t| fibres[t]).collect();
        if let Some(choice) = first_bad_choice(source, &parts, 0, ElementSet::EMPTY) {
            return Err(Error::MorphismViolation {
                target_basis,
                choice,
            });
        }
    }
    Ok(())
}

fn first_bad_choice(
    source: &Matroid,
    parts: &[ElementSet],
    at: usize,
    acc: ElementSet,
) -> Option<ElementSet> {
    if at == parts.len() {
        return (!source.is_basis(acc)).then_some(acc);
    }
    for x in parts[at] {
        // a partial choice outside every basis cannot be completed
        if !source.is_independent(acc.with(x)) {
            let mut witness = acc.with(x);
            for p in &parts[at + 1..] {
                if let Some(y) = p.first() {
                    witness = witness.with(y);
                }
            }
            return Some(witness);
        }
        if let Some(bad) = first_bad_choice(source, parts, at + 1, acc.with(x)) {
            return Some(bad);
        }
    }
    None
}
