//! Passage from `G_n(H)` to `F × Z` for `H ⊇ <(1, 2, ..., n)>`.
//!
//! Each relation `z = a_τ(1) ... a_τ(n)` with `τ(k) = 1` is equivalent in the
//! group to `a_2 ... a_n = a_τ(k+1) ... a_τ(n) a_τ(1) ... a_τ(k-1)`, which
//! only depends on the coset `τ<σ>`. Dropping `a_1` and shifting letters down
//! by one gives a presentation on `n - 1` generators indexed by the point
//! stabilizer `H_1`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::perm::{close_under_group, Permutation, PermutationSet};
use crate::presentation::Presentation;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerReduction {
    h: PermutationSet,
    h1: PermutationSet,
    induced_relations: Vec<(Word, Word)>,
}

impl StabilizerReduction {
    pub fn h(&self) -> &PermutationSet {
        &self.h
    }

    /// `H_1 = {χ ∈ H | χ(1) = 1}` acting on `{2, ..., n}` relabelled as
    /// `{1, ..., n-1}`.
    pub fn h1(&self) -> &PermutationSet {
        &self.h1
    }

    /// Non-trivial relations `1 2 ... n-1 = ...` after relabelling, deduplicated.
    pub fn induced_relations(&self) -> &[(Word, Word)] {
        &self.induced_relations
    }

    /// The degree `n - 1` monoid presentation carrying the induced relations.
    pub fn induced_presentation(&self) -> Result<Presentation> {
        let m = self.h1.degree();
        let perms = self
            .induced_relations
            .iter()
            .map(|(_, rhs)| Permutation::new(rhs.letters().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        let set = if self.h.is_subgroup() {
            close_under_group(m, &perms)?
        } else {
            PermutationSet::from_members(m, perms.into_iter().chain([Permutation::identity(m)]))?
        };
        Presentation::new(set)
    }
}

pub fn stabilizer_reduction(h: &PermutationSet) -> Result<StabilizerReduction> {
    let n = h.degree();
    if n < 3 {
        return Err(Error::RankTooSmall { n, min: 3 });
    }
    if !h.contains_full_cycle() {
        return Err(Error::MissingCycle { n });
    }

    let stabilizer = h.members().filter(|chi| chi.apply(1) == 1).map(|chi| {
        Permutation::new((2..=n).map(|k| (chi.apply(k) - 1) as u8).collect())
            .expect("restriction of a permutation fixing 1")
    });
    let h1 = if h.is_subgroup() {
        let gens: Vec<Permutation> = stabilizer.collect();
        close_under_group(n - 1, &gens)?
    } else {
        PermutationSet::from_members(n - 1, stabilizer)?
    };

    let left = Word::z(n - 1);
    let mut seen = BTreeSet::new();
    for tau in h.members() {
        let k = tau.preimage_of_one();
        // τ(k+1) ... τ(n) τ(1) ... τ(k-1), each letter shifted down by one.
        let rhs: Vec<u8> = (k + 1..=n)
            .chain(1..k)
            .map(|pos| (tau.apply(pos) - 1) as u8)
            .collect();
        if rhs != left.letters() {
            seen.insert(Word::from(rhs));
        }
    }
    let induced_relations = seen.into_iter().map(|r| (left.clone(), r)).collect();

    Ok(StabilizerReduction {
        h: h.clone(),
        h1,
        induced_relations,
    })
}
