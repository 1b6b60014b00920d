//! Monoid presentations `S_n(H)` given by permutation relations
//! `a_1 a_2 ... a_n = a_σ(1) a_σ(2) ... a_σ(n)` for `σ ∈ H`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{close_under_group, Permutation, PermutationSet};
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    n: usize,
    h: PermutationSet,
    relations: Vec<(Word, Word)>,
}

impl Presentation {
    pub fn new(h: PermutationSet) -> Result<Self> {
        let n = h.degree();
        if n < 2 {
            return Err(Error::RankTooSmall { n, min: 2 });
        }
        let relations = relations_of(&h);
        Ok(Presentation { n, h, relations })
    }

    /// `S_n(<(1, 2, ..., n)>)`.
    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(PermutationSet::cyclic(n))
    }

    /// `S_n(Sym_n)`.
    pub fn symmetric(n: usize) -> Result<Self> {
        Self::new(PermutationSet::symmetric(n))
    }

    /// `S_n({id})`, the free monoid.
    pub fn free(n: usize) -> Result<Self> {
        Self::new(PermutationSet::trivial(n))
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> &PermutationSet {
        &self.h
    }

    pub fn relations(&self) -> &[(Word, Word)] {
        &self.relations
    }

    /// Right-hand sides `a_σ(1) ... a_σ(n)` for every `σ ∈ H ∪ {id}`,
    /// i.e. every word equal to `z` by a single relation.
    pub fn relation_words(&self) -> Vec<Word> {
        let mut words: Vec<Word> = std::iter::once(Word::z(self.n))
            .chain(self.relations.iter().map(|(_, r)| r.clone()))
            .collect();
        words.sort();
        words.dedup();
        words
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PresentationJson::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: PresentationJson =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        raw.try_into()
    }
}

/// One pair per non-identity `σ ∈ H`: left side `1 2 ... n`, right side the
/// word whose letter at position `k` is `σ(k)`.
pub fn relations_of(h: &PermutationSet) -> Vec<(Word, Word)> {
    let z = Word::z(h.degree());
    h.members()
        .filter(|p| !p.is_identity())
        .map(|p| (z.clone(), Word::from(p.images())))
        .collect()
}

/// JSON shape `{n, generators}` for subgroups or `{n, members}` for subsets.
#[derive(Serialize, Deserialize)]
struct PresentationJson {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    generators: Option<Vec<Permutation>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    members: Option<Vec<Permutation>>,
}

impl From<&Presentation> for PresentationJson {
    fn from(p: &Presentation) -> Self {
        let list: Vec<Permutation> = p.h.members().cloned().collect();
        if p.h.is_subgroup() {
            PresentationJson {
                n: p.n,
                generators: Some(list),
                members: None,
            }
        } else {
            PresentationJson {
                n: p.n,
                generators: None,
                members: Some(list),
            }
        }
    }
}

impl TryFrom<PresentationJson> for Presentation {
    type Error = Error;

    fn try_from(raw: PresentationJson) -> Result<Self> {
        let h = match (raw.generators, raw.members) {
            (Some(gens), None) => close_under_group(raw.n, &gens)?,
            (None, Some(members)) => PermutationSet::from_members(raw.n, members)?,
            _ => {
                return Err(Error::Json(
                    "expected exactly one of \"generators\" or \"members\"".into(),
                ))
            }
        };
        Presentation::new(h)
    }
}
