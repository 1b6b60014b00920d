//! Exact computation in `S_n(H)` for arbitrary `H` by congruence closure.
//!
//! Relations are homogeneous, so the words of a fixed length form a finite
//! set closed under the defining congruence. A [`CongruenceTable`] holds the
//! classes of one length stratum. It is the brute-force oracle for the
//! cyclic-case rewriting engine and the only tool available for other `H`.

mod stabilizer;

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::word::Word;

pub use stabilizer::{stabilizer_reduction, StabilizerReduction};

/// Upper bound on the number of words a single table may enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(100_000_000);

    /// `n^length`, or an error naming the requirement when it exceeds the budget.
    pub fn check(&self, n: usize, length: usize) -> Result<usize> {
        let required = (n as u128).checked_pow(length as u32).unwrap_or(u128::MAX);
        if required > self.0 as u128 || required > u32::MAX as u128 {
            return Err(Error::BudgetExceeded {
                required,
                budget: self.0,
            });
        }
        Ok(required as usize)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

/// The congruence classes of all `n^length` words of one length.
#[derive(Clone, Debug)]
pub struct CongruenceTable {
    n: usize,
    length: usize,
    presentation: Presentation,
    /// For each word index, the index of its class representative (the
    /// lexicographically least member).
    rep: Vec<u32>,
    class_sizes: HashMap<u32, u32>,
}

/// Builds the table for words of length `length`.
///
/// Each relation has `1 2 ... n` as one side, so uniting every occurrence of
/// `z` with each relation word at the same place covers both orientations.
pub fn build_table(p: &Presentation, length: usize, budget: Budget) -> Result<CongruenceTable> {
    let n = p.rank();
    let total = budget.check(n, length)?;
    let mut uf: UnionFind<u32> = UnionFind::new(total);

    let z_digits = Word::z(n);
    let others: Vec<Word> = p
        .relation_words()
        .into_iter()
        .filter(|w| *w != z_digits)
        .collect();
    if length >= n && !others.is_empty() {
        let z_value = word_value(n, &z_digits);
        let other_values: Vec<usize> = others.iter().map(|w| word_value(n, w)).collect();
        for pos in 0..=length - n {
            let suffix_len = length - n - pos;
            let prefix_count = n.pow(pos as u32);
            let suffix_count = n.pow(suffix_len as u32);
            let block_scale = suffix_count;
            let prefix_scale = n.pow((length - pos) as u32);
            for prefix in 0..prefix_count {
                for suffix in 0..suffix_count {
                    let base = prefix * prefix_scale + suffix;
                    let with_z = (base + z_value * block_scale) as u32;
                    for &v in &other_values {
                        uf.union(with_z, (base + v * block_scale) as u32);
                    }
                }
            }
        }
    }

    let mut root_rep: HashMap<u32, u32> = HashMap::new();
    let mut rep = Vec::with_capacity(total);
    let mut class_sizes: HashMap<u32, u32> = HashMap::new();
    for idx in 0..total as u32 {
        let root = uf.find_mut(idx);
        let r = *root_rep.entry(root).or_insert(idx);
        rep.push(r);
        *class_sizes.entry(r).or_insert(0) += 1;
    }
    Ok(CongruenceTable {
        n,
        length,
        presentation: p.clone(),
        rep,
        class_sizes,
    })
}

/// Base-`n` value of a word with letter `k` as digit `k - 1`, most
/// significant first; this order is the lexicographic order on words.
fn word_value(n: usize, w: &Word) -> usize {
    w.letters()
        .iter()
        .fold(0, |acc, &k| acc * n + (k as usize - 1))
}

impl CongruenceTable {
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn word_count(&self) -> usize {
        self.rep.len()
    }

    pub fn class_count(&self) -> usize {
        self.class_sizes.len()
    }

    /// Number of classes with exactly one word.
    pub fn singleton_count(&self) -> usize {
        self.class_sizes.values().filter(|&&s| s == 1).count()
    }

    fn index_of(&self, w: &Word) -> Result<usize> {
        if w.len() != self.length {
            return Err(Error::LengthMismatch {
                left: w.len(),
                right: self.length,
            });
        }
        Word::checked(w.letters().to_vec(), self.n)?;
        Ok(word_value(self.n, w))
    }

    fn word_at(&self, mut idx: usize) -> Word {
        let mut letters = vec![0u8; self.length];
        for slot in letters.iter_mut().rev() {
            *slot = (idx % self.n) as u8 + 1;
            idx /= self.n;
        }
        Word::from(letters)
    }

    /// The length-lex-minimal word of the class of `w`.
    pub fn representative(&self, w: &Word) -> Result<Word> {
        let idx = self.index_of(w)?;
        Ok(self.word_at(self.rep[idx] as usize))
    }

    /// Size of the class of `w`.
    pub fn class_size(&self, w: &Word) -> Result<usize> {
        let idx = self.index_of(w)?;
        Ok(self.class_sizes[&self.rep[idx]] as usize)
    }

    /// All class representatives, in lexicographic order.
    pub fn representatives(&self) -> Vec<Word> {
        let mut reps: Vec<u32> = self.class_sizes.keys().copied().collect();
        reps.sort_unstable();
        reps.into_iter().map(|r| self.word_at(r as usize)).collect()
    }

    /// Every class as a list of its members (representative first).
    pub fn classes(&self) -> Vec<Vec<Word>> {
        let mut grouped: HashMap<u32, Vec<Word>> = HashMap::new();
        for (idx, &r) in self.rep.iter().enumerate() {
            grouped.entry(r).or_default().push(self.word_at(idx));
        }
        let mut out: Vec<(u32, Vec<Word>)> = grouped.into_iter().collect();
        out.sort_by_key(|(r, _)| *r);
        out.into_iter().map(|(_, members)| members).collect()
    }

    pub fn oracle_equal(&self, u: &Word, v: &Word) -> Result<bool> {
        if u.len() != v.len() {
            return Err(Error::LengthMismatch {
                left: u.len(),
                right: v.len(),
            });
        }
        Ok(self.rep[self.index_of(u)?] == self.rep[self.index_of(v)?])
    }

    /// CSV with header `word,representative`; letters space-separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("word,representative\n");
        for (idx, &r) in self.rep.iter().enumerate() {
            writeln!(out, "{},{}", self.word_at(idx), self.word_at(r as usize)).unwrap();
        }
        out
    }
}

/// Number of elements of each length `0..=max_length`.
pub fn growth(p: &Presentation, max_length: usize, budget: Budget) -> Result<Vec<usize>> {
    (0..=max_length)
        .map(|len| build_table(p, len, budget).map(|t| t.class_count()))
        .collect()
}

/// Whether `z a_i a_j` and `z a_j a_i` are equal in `S_n(H)`.
pub fn commutes_after_z(p: &Presentation, i: usize, j: usize, budget: Budget) -> Result<bool> {
    let n = p.rank();
    if i == 0 || j == 0 || i > n || j > n {
        return Err(Error::Precondition(format!(
            "generator indices {i}, {j} outside 1..={n}"
        )));
    }
    let table = build_table(p, n + 2, budget)?;
    let z = Word::z(n);
    let ij = z.concat(&Word::from(vec![i as u8, j as u8]));
    let ji = z.concat(&Word::from(vec![j as u8, i as u8]));
    table.oracle_equal(&ij, &ji)
}

/// `z (a_i a_j - a_j a_i) = 0` in `S_n(Sym_n)`, for `1 <= i < j <= n`.
pub fn check_sym_identity(n: usize, i: usize, j: usize, budget: Budget) -> Result<bool> {
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::Precondition(format!(
            "need 1 <= i < j <= n, got i={i} j={j} n={n}"
        )));
    }
    commutes_after_z(&Presentation::symmetric(n)?, i, j, budget)
}

/// Verifies `z a_k = a_k z` for every generator, which makes `z` central.
pub fn check_centrality(p: &Presentation, budget: Budget) -> Result<()> {
    let n = p.rank();
    let table = build_table(p, n + 1, budget)?;
    let z = Word::z(n);
    for k in 1..=n {
        let a = Word::from(vec![k as u8]);
        if !table.oracle_equal(&z.concat(&a), &a.concat(&z))? {
            return Err(Error::NotCentral { letter: k });
        }
    }
    Ok(())
}

/// Outcome of the bounded search for `s z^i = t z^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum RhoVerdict {
    Related { power: usize },
    Unknown,
}

/// Semidecision for the least cancellative congruence: searches
/// `i = 0, 1, ..., max_power` for `s z^i = t z^i`.
pub fn rho_related(
    p: &Presentation,
    s: &Word,
    t: &Word,
    max_power: usize,
    budget: Budget,
) -> Result<RhoVerdict> {
    if s.len() != t.len() {
        return Err(Error::LengthMismatch {
            left: s.len(),
            right: t.len(),
        });
    }
    if s == t {
        return Ok(RhoVerdict::Related { power: 0 });
    }
    check_centrality(p, budget)?;
    let n = p.rank();
    let z = Word::z(n);
    for power in 0..=max_power {
        let table = build_table(p, s.len() + power * n, budget)?;
        let zi = z.power(power);
        if table.oracle_equal(&s.concat(&zi), &t.concat(&zi))? {
            return Ok(RhoVerdict::Related { power });
        }
    }
    Ok(RhoVerdict::Unknown)
}

/// Class counts of the relation `s ~ t ⇔ s z^power = t z^power` on words of
/// each length. Since `s z^i = t z^i` implies the same for `i + 1`, this is
/// the bounded approximation of `M / ρ`, exact once `power` is large enough.
pub fn rho_growth(
    p: &Presentation,
    max_length: usize,
    power: usize,
    budget: Budget,
) -> Result<Vec<usize>> {
    check_centrality(p, budget)?;
    let n = p.rank();
    let zi = Word::z(n).power(power);
    (0..=max_length)
        .map(|len| {
            let table = build_table(p, len + power * n, budget)?;
            let mut classes = HashSet::new();
            for s in Word::all_of_length(n, len) {
                classes.insert(table.representative(&s.concat(&zi))?);
            }
            Ok(classes.len())
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// Distinct elements `u != v` with `u a = v a` (right) or `a u = a v` (left).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CancellationFailure {
    pub u: Word,
    pub v: Word,
    pub letter: usize,
    pub side: Side,
}

/// Bounded search for cancellation failures by a single generator, on
/// elements of length below `max_length`. Cancellation by longer words
/// reduces to single letters, so an empty result means the monoid is
/// cancellative up to that length.
pub fn cancellation_failures(
    p: &Presentation,
    max_length: usize,
    budget: Budget,
) -> Result<Vec<CancellationFailure>> {
    let n = p.rank();
    let mut out = Vec::new();
    for len in 0..max_length {
        let here = build_table(p, len, budget)?;
        let next = build_table(p, len + 1, budget)?;
        for side in [Side::Right, Side::Left] {
            let mut seen: HashMap<(usize, Word), Word> = HashMap::new();
            for rep in here.representatives() {
                for k in 1..=n {
                    let a = Word::from(vec![k as u8]);
                    let product = match side {
                        Side::Right => rep.concat(&a),
                        Side::Left => a.concat(&rep),
                    };
                    let key = (k, next.representative(&product)?);
                    match seen.get(&key) {
                        Some(other) => out.push(CancellationFailure {
                            u: other.clone(),
                            v: rep.clone(),
                            letter: k,
                            side,
                        }),
                        None => {
                            seen.insert(key, rep.clone());
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::PermutationSet;
    use crate::rewrite::CyclicMonoid;

    fn w<const N: usize>(letters: [u8; N]) -> Word {
        Word::from(letters)
    }

    #[test]
    fn class_counts_at_length_three() {
        let b = Budget::DEFAULT;
        assert_eq!(
            build_table(&Presentation::free(3).unwrap(), 3, b)
                .unwrap()
                .class_count(),
            27
        );
        assert_eq!(
            build_table(&Presentation::cyclic(3).unwrap(), 3, b)
                .unwrap()
                .class_count(),
            25
        );
        assert_eq!(
            build_table(&Presentation::symmetric(3).unwrap(), 3, b)
                .unwrap()
                .class_count(),
            22
        );
    }

    #[test]
    fn budget_refusal_names_requirement() {
        let err = build_table(&Presentation::cyclic(3).unwrap(), 5, Budget(100)).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                required: 243,
                budget: 100
            }
        );
    }

    #[test]
    fn oracle_equality_examples() {
        let t = build_table(&Presentation::cyclic(3).unwrap(), 3, Budget::DEFAULT).unwrap();
        assert!(t.oracle_equal(&w([2, 3, 1]), &w([3, 1, 2])).unwrap());
        assert!(!t.oracle_equal(&w([1, 2, 3]), &w([1, 3, 2])).unwrap());
        assert!(t.oracle_equal(&w([3, 3, 3]), &w([3, 3, 3])).unwrap());
        assert!(matches!(
            t.oracle_equal(&w([1, 2]), &w([1, 2, 3])),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            t.oracle_equal(&w([1, 2]), &w([2, 1])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn growth_examples() {
        let b = Budget::DEFAULT;
        assert_eq!(
            growth(&Presentation::cyclic(3).unwrap(), 3, b).unwrap(),
            vec![1, 3, 9, 25]
        );
        assert_eq!(
            growth(&Presentation::free(3).unwrap(), 4, b).unwrap(),
            vec![1, 3, 9, 27, 81]
        );
        assert_eq!(
            growth(&Presentation::symmetric(2).unwrap(), 6, b).unwrap(),
            vec![1, 2, 3, 4, 5, 6, 7]
        );
    }

    #[test]
    fn representatives_are_irreducible_in_cyclic_case() {
        let m = CyclicMonoid::new(3).unwrap();
        let p = Presentation::cyclic(3).unwrap();
        for len in 0..=6 {
            let t = build_table(&p, len, Budget::DEFAULT).unwrap();
            for rep in t.representatives() {
                assert_eq!(m.normal_form(&rep), rep);
            }
        }
    }

    #[test]
    fn multidegree_constant_on_classes() {
        let p = Presentation::symmetric(3).unwrap();
        let t = build_table(&p, 5, Budget::DEFAULT).unwrap();
        for class in t.classes() {
            let deg = class[0].multidegree(3);
            assert!(class.iter().all(|w| w.multidegree(3) == deg));
        }
    }

    #[test]
    fn enlarging_h_never_increases_class_count() {
        let b = Budget::DEFAULT;
        let chain = [
            PermutationSet::trivial(4),
            PermutationSet::cyclic(4),
            crate::perm::close_under_group(
                4,
                &[
                    crate::perm::Permutation::full_cycle(4),
                    crate::perm::Permutation::new(vec![3, 2, 1, 4]).unwrap(),
                ],
            )
            .unwrap(),
            PermutationSet::symmetric(4),
        ];
        for pair in chain.windows(2) {
            assert!(pair[0].is_subset_of(&pair[1]));
            let small = growth(&Presentation::new(pair[0].clone()).unwrap(), 6, b).unwrap();
            let large = growth(&Presentation::new(pair[1].clone()).unwrap(), 6, b).unwrap();
            assert!(small.iter().zip(&large).all(|(s, l)| l <= s));
        }
    }

    #[test]
    fn sym_identity_and_cyclic_contrast() {
        let b = Budget::DEFAULT;
        assert!(check_sym_identity(3, 1, 2, b).unwrap());
        for (i, j) in [(1, 2), (1, 3), (2, 3)] {
            assert!(check_sym_identity(3, i, j, b).unwrap());
        }
        assert!(!commutes_after_z(&Presentation::cyclic(3).unwrap(), 1, 2, b).unwrap());
        assert!(check_sym_identity(3, 2, 1, b).is_err());
    }

    #[test]
    fn rho_examples() {
        let b = Budget::DEFAULT;
        let sym = Presentation::symmetric(3).unwrap();
        assert_eq!(
            rho_related(&sym, &w([1, 2]), &w([2, 1]), 1, b).unwrap(),
            RhoVerdict::Related { power: 1 }
        );
        assert_eq!(
            rho_related(&sym, &w([1]), &w([2]), 2, b).unwrap(),
            RhoVerdict::Unknown
        );
        assert_eq!(
            rho_related(&sym, &w([2, 2]), &w([2, 2]), 0, b).unwrap(),
            RhoVerdict::Related { power: 0 }
        );
        assert!(rho_related(&sym, &w([1]), &w([1, 2]), 1, b).is_err());
    }

    #[test]
    fn rho_needs_central_z() {
        // H = {(1 2)} alone: z a_1 = 1 2 3 1 and a_1 z = 1 1 2 3 are not related.
        let h = PermutationSet::from_members(
            3,
            [crate::perm::Permutation::new(vec![2, 1, 3]).unwrap()],
        )
        .unwrap();
        let p = Presentation::new(h).unwrap();
        assert!(matches!(
            rho_related(&p, &w([1, 2]), &w([2, 1]), 1, Budget::DEFAULT),
            Err(Error::NotCentral { .. })
        ));
    }

    #[test]
    fn rho_growth_of_symmetric_is_commutative() {
        // Multisets of size l over 3 letters: C(l+2, 2).
        let sym = Presentation::symmetric(3).unwrap();
        assert_eq!(
            rho_growth(&sym, 4, 1, Budget::DEFAULT).unwrap(),
            vec![1, 3, 6, 10, 15]
        );
    }

    #[test]
    fn cyclic_case_is_cancellative_up_to_bound() {
        let failures =
            cancellation_failures(&Presentation::cyclic(3).unwrap(), 5, Budget::DEFAULT).unwrap();
        assert!(failures.is_empty());
    }

    #[test]
    fn symmetric_case_fails_cancellation() {
        let failures =
            cancellation_failures(&Presentation::symmetric(3).unwrap(), 5, Budget::DEFAULT)
                .unwrap();
        assert!(!failures.is_empty());
        let t = build_table(&Presentation::symmetric(3).unwrap(), 5, Budget::DEFAULT).unwrap();
        for f in &failures {
            assert!(!f.u.is_empty() || !f.v.is_empty());
            assert_ne!(f.u, f.v);
            let a = Word::from(vec![f.letter as u8]);
            let (x, y) = match f.side {
                Side::Right => (f.u.concat(&a), f.v.concat(&a)),
                Side::Left => (a.concat(&f.u), a.concat(&f.v)),
            };
            if x.len() == 5 {
                assert!(t.oracle_equal(&x, &y).unwrap());
            }
        }
    }

    #[test]
    fn csv_export() {
        let t = build_table(&Presentation::cyclic(3).unwrap(), 3, Budget::DEFAULT).unwrap();
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "word,representative");
        assert_eq!(lines.len(), 28);
        assert!(lines.contains(&"2 3 1,1 2 3"));
        assert!(lines.contains(&"1 3 2,1 3 2"));
    }

    #[test]
    fn singleton_counts() {
        let t = build_table(&Presentation::cyclic(3).unwrap(), 3, Budget::DEFAULT).unwrap();
        assert_eq!(t.singleton_count(), 24);
        assert_eq!(t.class_size(&w([3, 1, 2])).unwrap(), 3);
    }
}
