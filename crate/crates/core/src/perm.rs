//! Permutations in one-line notation and sets of them.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::MAX_RANK;

/// A bijection of `{1, ..., n}` stored as its one-line images.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        if n == 0 || n > MAX_RANK {
            return Err(Error::InvalidPermutation(format!("{images:?}")));
        }
        let mut seen = vec![false; n];
        for &v in &images {
            let v = v as usize;
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(format!("{images:?}")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    /// The cycle `(1, 2, ..., n)`, i.e. `k -> k + 1 (mod n)`.
    pub fn full_cycle(n: usize) -> Self {
        Permutation((1..=n).map(|k| (k % n + 1) as u8).collect())
    }

    /// The transposition swapping `i` and `j`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<u8> = (1..=n as u8).collect();
        images.swap(i - 1, j - 1);
        Permutation(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    /// Image of the point `k` (1-based).
    pub fn apply(&self, k: usize) -> usize {
        self.0[k - 1] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&k| self.0[k as usize - 1]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u8;
        }
        Permutation(inv)
    }

    /// Point where the value `1` sits, i.e. the unique `k` with `self(k) = 1`.
    pub fn preimage_of_one(&self) -> usize {
        self.0.iter().position(|&v| v == 1).unwrap() + 1
    }
}

impl TryFrom<Vec<u8>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<u8>) -> Result<Self> {
        Permutation::new(images)
    }
}

impl From<Permutation> for Vec<u8> {
    fn from(p: Permutation) -> Vec<u8> {
        p.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u8::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({self})")
    }
}

/// Parses a permutation of degree `n`.
///
/// Accepts comma-separated one-line images (`"2,3,1"`) or cycle notation
/// (`"(1 2 3)"`, `"(1,2)(3,4)"`, `"()"` for the identity).
pub fn parse_permutation(text: &str, n: usize) -> Result<Permutation> {
    let text = text.trim();
    if text.starts_with('(') {
        return parse_cycles(text, n);
    }
    let images = text
        .split(',')
        .map(|t| t.trim().parse::<u8>())
        .collect::<std::result::Result<Vec<u8>, _>>()
        .map_err(|_| Error::InvalidPermutation(text.to_string()))?;
    if images.len() != n {
        return Err(Error::MixedDegrees {
            expected: n,
            found: images.len(),
        });
    }
    Permutation::new(images)
}

fn parse_cycles(text: &str, n: usize) -> Result<Permutation> {
    let bad = || Error::InvalidPermutation(text.to_string());
    if n == 0 || n > MAX_RANK {
        return Err(bad());
    }
    let mut images: Vec<u8> = (1..=n as u8).collect();
    let mut rest = text;
    // Cycles compose right to left, as in (1 2)(2 3).
    let mut cycles = Vec::new();
    while !rest.is_empty() {
        let inner_end = rest.find(')').ok_or_else(bad)?;
        if !rest.starts_with('(') {
            return Err(bad());
        }
        let inner = &rest[1..inner_end];
        let points = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<usize>>>()?;
        if points.iter().any(|&p| p == 0 || p > n) {
            return Err(bad());
        }
        let distinct: BTreeSet<_> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(bad());
        }
        cycles.push(points);
        rest = rest[inner_end + 1..].trim_start();
    }
    for cycle in cycles.iter().rev() {
        let mut step: Vec<u8> = (1..=n as u8).collect();
        for (idx, &p) in cycle.iter().enumerate() {
            step[p - 1] = cycle[(idx + 1) % cycle.len()] as u8;
        }
        // images := step ∘ images
        images = images.iter().map(|&k| step[k as usize - 1]).collect();
    }
    Permutation::new(images)
}

/// A set `H` of permutations of common degree `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationSet {
    n: usize,
    members: BTreeSet<Permutation>,
    is_subgroup: bool,
}

impl PermutationSet {
    /// An arbitrary subset; no closure is performed.
    pub fn from_members(n: usize, members: impl IntoIterator<Item = Permutation>) -> Result<Self> {
        let members: BTreeSet<Permutation> = members.into_iter().collect();
        if let Some(p) = members.iter().find(|p| p.degree() != n) {
            return Err(Error::MixedDegrees {
                expected: n,
                found: p.degree(),
            });
        }
        Ok(PermutationSet {
            n,
            members,
            is_subgroup: false,
        })
    }

    /// `{id}`: the free monoid.
    pub fn trivial(n: usize) -> Self {
        close_under_group(n, &[]).expect("empty generating set")
    }

    /// `H_0 = <(1, 2, ..., n)>`.
    pub fn cyclic(n: usize) -> Self {
        close_under_group(n, &[Permutation::full_cycle(n)]).expect("single generator")
    }

    /// The full symmetric group.
    pub fn symmetric(n: usize) -> Self {
        let mut gens = vec![Permutation::full_cycle(n)];
        if n >= 2 {
            gens.push(Permutation::transposition(n, 1, 2));
        }
        close_under_group(n, &gens).expect("generators share a degree")
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subgroup(&self) -> bool {
        self.is_subgroup
    }

    pub fn members(&self) -> impl Iterator<Item = &Permutation> {
        self.members.iter()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.members.contains(p)
    }

    pub fn contains_full_cycle(&self) -> bool {
        self.contains(&Permutation::full_cycle(self.n))
    }

    /// True when every member of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &PermutationSet) -> bool {
        self.n == other.n && self.members.is_subset(&other.members)
    }

    /// True when this set is exactly `<(1, 2, ..., n)>`.
    pub fn is_cyclic_group(&self) -> bool {
        let cyclic = PermutationSet::cyclic(self.n);
        self.members == cyclic.members
    }
}

/// The subgroup generated by `generators`: breadth-first closure of the
/// identity under left multiplication by generators.
pub fn close_under_group(n: usize, generators: &[Permutation]) -> Result<PermutationSet> {
    if n == 0 || n > MAX_RANK {
        return Err(Error::RankTooSmall { n, min: 1 });
    }
    if let Some(g) = generators.iter().find(|g| g.degree() != n) {
        return Err(Error::MixedDegrees {
            expected: n,
            found: g.degree(),
        });
    }
    let id = Permutation::identity(n);
    let mut members = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in generators {
            let q = g.compose(&p);
            if members.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    // In a finite group the monoid generated is already closed under inverses.
    Ok(PermutationSet {
        n,
        members,
        is_subgroup: true,
    })
}

/// Closes an existing set (members taken as generators).
pub fn close_set(set: &PermutationSet) -> PermutationSet {
    let gens: Vec<Permutation> = set.members.iter().cloned().collect();
    close_under_group(set.n, &gens).expect("members share a degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[u8]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn cyclic_group_of_order_three() {
        let h = close_under_group(3, &[perm(&[2, 3, 1])]).unwrap();
        assert_eq!(h.len(), 3);
        assert!(h.contains(&perm(&[1, 2, 3])));
        assert!(h.contains(&perm(&[2, 3, 1])));
        assert!(h.contains(&perm(&[3, 1, 2])));
        assert!(h.is_subgroup());
    }

    #[test]
    fn empty_generators_give_identity() {
        let h = close_under_group(3, &[]).unwrap();
        assert_eq!(h.len(), 1);
        assert!(h.contains(&Permutation::identity(3)));
    }

    #[test]
    fn transposition_and_cycle_generate_sym3() {
        let h = close_under_group(3, &[perm(&[2, 1, 3]), perm(&[2, 3, 1])]).unwrap();
        assert_eq!(h.len(), 6);
        assert_eq!(PermutationSet::symmetric(4).len(), 24);
        assert_eq!(PermutationSet::symmetric(5).len(), 120);
    }

    #[test]
    fn mixed_degrees_rejected() {
        let err = close_under_group(3, &[perm(&[2, 1])]).unwrap_err();
        assert_eq!(
            err,
            Error::MixedDegrees {
                expected: 3,
                found: 2
            }
        );
    }

    #[test]
    fn closure_is_idempotent() {
        for h in [
            PermutationSet::cyclic(4),
            PermutationSet::symmetric(4),
            close_under_group(4, &[perm(&[2, 1, 4, 3])]).unwrap(),
        ] {
            assert_eq!(close_set(&h), h);
        }
    }

    #[test]
    fn group_axioms_hold_on_closures() {
        let h = close_under_group(4, &[perm(&[2, 1, 3, 4]), perm(&[1, 3, 4, 2])]).unwrap();
        for a in h.members() {
            assert!(h.contains(&a.inverse()));
            assert!(a.compose(&a.inverse()).is_identity());
            for b in h.members() {
                assert!(h.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn parses_one_line_and_cycles() {
        assert_eq!(parse_permutation("2,3,1", 3).unwrap(), perm(&[2, 3, 1]));
        assert_eq!(parse_permutation("(1 2 3)", 3).unwrap(), perm(&[2, 3, 1]));
        assert_eq!(parse_permutation("(1,2,3)", 3).unwrap(), perm(&[2, 3, 1]));
        assert_eq!(
            parse_permutation("()", 3).unwrap(),
            Permutation::identity(3)
        );
        // (1 2)(2 3): 2 -> 3 -> 3, 3 -> 2 -> 1, 1 -> 1 -> 2
        assert_eq!(
            parse_permutation("(1 2)(2 3)", 3).unwrap(),
            perm(&[2, 3, 1])
        );
        assert!(parse_permutation("(1 4)", 3).is_err());
        assert!(parse_permutation("2,2,1", 3).is_err());
        assert!(matches!(
            parse_permutation("2,1", 3),
            Err(Error::MixedDegrees { .. })
        ));
    }

    #[test]
    fn full_cycle_images() {
        assert_eq!(Permutation::full_cycle(4).images(), &[2, 3, 4, 1]);
        assert_eq!(Permutation::full_cycle(4).preimage_of_one(), 4);
    }
}
