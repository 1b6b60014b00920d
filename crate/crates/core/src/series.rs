//! Counting elements of `S_n` by length without enumerating words.
//!
//! Two routes: normal forms `a_1^i z^ε (a_2...a_n)^j b` counted through an
//! automaton for the admissible tails, and the words avoiding all rotations
//! of `1 2 ... n` (the elements outside `P = z S_n`, each of which has a
//! single word). The explorer supplies a third, brute-force column.

use std::collections::{HashMap, VecDeque};
use std::fmt::{self, Debug, Display, Write as _};
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::explorer::{build_table, Budget};
use crate::presentation::Presentation;
use crate::word::{Word, MAX_RANK};

/// Number types the counters can produce. `BigUint` never overflows; `u64`
/// and `u128` are faster for short lengths.
pub trait Count:
    Clone
    + Zero
    + One
    + Add<Output = Self>
    + Mul<Output = Self>
    + From<u32>
    + Debug
    + Display
    + PartialEq
{
}

impl<T> Count for T where
    T: Clone
        + Zero
        + One
        + Add<Output = T>
        + Mul<Output = T>
        + From<u32>
        + Debug
        + Display
        + PartialEq
{
}

/// Deterministic automaton where every live state accepts and `None` is the
/// dead state.
#[derive(Clone, Debug)]
struct Dfa {
    alphabet: usize,
    start: usize,
    next: Vec<Vec<Option<usize>>>,
}

impl Dfa {
    fn count_words<C: Count>(&self, max_length: usize) -> Vec<C> {
        let mut current = vec![C::zero(); self.next.len()];
        current[self.start] = C::one();
        let mut out = Vec::with_capacity(max_length + 1);
        for len in 0..=max_length {
            out.push(current.iter().cloned().fold(C::zero(), |acc, c| acc + c));
            if len == max_length {
                break;
            }
            let mut following = vec![C::zero(); self.next.len()];
            for (state, count) in current.iter().enumerate() {
                if count.is_zero() {
                    continue;
                }
                for letter in 0..self.alphabet {
                    if let Some(t) = self.next[state][letter] {
                        following[t] = following[t].clone() + count.clone();
                    }
                }
            }
            current = following;
        }
        out
    }
}

/// Aho–Corasick automaton over a set of forbidden factors.
#[derive(Clone, Debug)]
pub struct FactorAutomaton {
    n: usize,
    goto: Vec<Vec<usize>>,
    forbidden: Vec<bool>,
}

impl FactorAutomaton {
    /// Builds the automaton for `patterns` over the letters `1..=n`.
    pub fn new(n: usize, patterns: &[Vec<u8>]) -> Result<Self> {
        if n == 0 || n > MAX_RANK {
            return Err(Error::RankTooSmall { n, min: 1 });
        }
        for p in patterns {
            Word::checked(p.clone(), n)?;
        }
        // Trie.
        let mut children: Vec<Vec<Option<usize>>> = vec![vec![None; n]];
        let mut forbidden = vec![false];
        for p in patterns {
            let mut state = 0;
            for &c in p {
                let slot = c as usize - 1;
                state = match children[state][slot] {
                    Some(s) => s,
                    None => {
                        children.push(vec![None; n]);
                        forbidden.push(false);
                        let s = children.len() - 1;
                        children[state][slot] = Some(s);
                        s
                    }
                };
            }
            forbidden[state] = true;
        }
        // Failure links in breadth-first order, completing goto as we go.
        let states = children.len();
        let mut goto = vec![vec![0usize; n]; states];
        let mut fail = vec![0usize; states];
        let mut queue = VecDeque::new();
        for c in 0..n {
            if let Some(s) = children[0][c] {
                goto[0][c] = s;
                queue.push_back(s);
            }
        }
        while let Some(s) = queue.pop_front() {
            forbidden[s] = forbidden[s] || forbidden[fail[s]];
            for c in 0..n {
                match children[s][c] {
                    Some(t) => {
                        fail[t] = goto[fail[s]][c];
                        goto[s][c] = t;
                        queue.push_back(t);
                    }
                    None => goto[s][c] = goto[fail[s]][c],
                }
            }
        }
        Ok(FactorAutomaton { n, goto, forbidden })
    }

    /// The `n` rotations of `1 2 ... n`.
    pub fn rotations(n: usize) -> Result<Self> {
        let patterns: Vec<Vec<u8>> = (0..n)
            .map(|r| (0..n).map(|k| ((r + k) % n + 1) as u8).collect())
            .collect();
        Self::new(n, &patterns)
    }

    pub fn start(&self) -> usize {
        0
    }

    pub fn state_count(&self) -> usize {
        self.goto.len()
    }

    pub fn step(&self, state: usize, letter: u8) -> usize {
        self.goto[state][letter as usize - 1]
    }

    pub fn is_forbidden(&self, state: usize) -> bool {
        self.forbidden[state]
    }

    /// True when `w` contains none of the patterns.
    pub fn avoids(&self, w: &Word) -> bool {
        let mut state = self.start();
        for &c in w.letters() {
            state = self.step(state, c);
            if self.is_forbidden(state) {
                return false;
            }
        }
        true
    }

    fn to_dfa(&self) -> Dfa {
        let next = (0..self.state_count())
            .map(|s| {
                (0..self.n)
                    .map(|c| {
                        let t = self.goto[s][c];
                        (!self.forbidden[s] && !self.forbidden[t]).then_some(t)
                    })
                    .collect()
            })
            .collect();
        Dfa {
            alphabet: self.n,
            start: 0,
            next,
        }
    }
}

/// Progress through the forbidden prefixes `a_1` and `a_2 ... a_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum PrefixState {
    /// Read the first `k` letters of `2 3 ... n` and nothing else.
    Matched(usize),
    /// Diverged from every forbidden prefix.
    Free,
}

fn prefix_step(n: usize, state: PrefixState, letter: u8) -> Option<PrefixState> {
    match state {
        PrefixState::Free => Some(PrefixState::Free),
        PrefixState::Matched(0) if letter == 1 => None,
        PrefixState::Matched(k) if letter as usize == k + 2 => {
            if k + 1 == n - 1 {
                None
            } else {
                Some(PrefixState::Matched(k + 1))
            }
        }
        PrefixState::Matched(_) => Some(PrefixState::Free),
    }
}

/// Product of the rotation-avoiding automaton with the prefix tracker: the
/// admissible tails `b` of the normal form.
fn tail_dfa(n: usize) -> Result<Dfa> {
    let factors = FactorAutomaton::rotations(n)?;
    let start = (factors.start(), PrefixState::Matched(0));
    let mut ids: HashMap<(usize, PrefixState), usize> = HashMap::from([(start, 0)]);
    let mut order = vec![start];
    let mut next: Vec<Vec<Option<usize>>> = Vec::new();
    let mut cursor = 0;
    while cursor < order.len() {
        let (fa, pre) = order[cursor];
        let mut row = Vec::with_capacity(n);
        for letter in 1..=n as u8 {
            let fa_next = factors.step(fa, letter);
            let target = match prefix_step(n, pre, letter) {
                Some(pre_next) if !factors.is_forbidden(fa_next) => {
                    let key = (fa_next, pre_next);
                    let id = *ids.entry(key).or_insert_with(|| {
                        order.push(key);
                        order.len() - 1
                    });
                    Some(id)
                }
                _ => None,
            };
            row.push(target);
        }
        next.push(row);
        cursor += 1;
    }
    Ok(Dfa {
        alphabet: n,
        start: 0,
        next,
    })
}

fn require_rank(n: usize) -> Result<()> {
    if !(3..=MAX_RANK).contains(&n) {
        return Err(Error::RankTooSmall { n, min: 3 });
    }
    Ok(())
}

/// Entry `ℓ`: words of length `ℓ` containing no rotation of `1 2 ... n`.
pub fn count_avoiding<C: Count>(n: usize, max_length: usize) -> Result<Vec<C>> {
    require_rank(n)?;
    Ok(FactorAutomaton::rotations(n)?
        .to_dfa()
        .count_words(max_length))
}

/// Entry `ℓ`: admissible normal-form tails of length `ℓ`.
pub fn count_tails<C: Count>(n: usize, max_length: usize) -> Result<Vec<C>> {
    require_rank(n)?;
    Ok(tail_dfa(n)?.count_words(max_length))
}

/// Entry `ℓ`: elements of `S_n` of length `ℓ`, counted as quadruples
/// `(i, ε, j, b)` with `i + nε + (n-1)j + |b| = ℓ` and
/// `j >= 1 ⇒ ε = 1 or i = 0`.
pub fn count_normal_forms<C: Count>(n: usize, max_length: usize) -> Result<Vec<C>> {
    let tails: Vec<C> = count_tails(n, max_length)?;
    // prefixes[k]: admissible (i, ε, j) of total length k.
    let mut prefixes = vec![0u32; max_length + 1];
    for eps in 0..=1usize {
        for j in 0..=max_length / (n - 1) {
            let fixed = n * eps + (n - 1) * j;
            if fixed > max_length {
                break;
            }
            for i in 0..=max_length - fixed {
                if j >= 1 && eps == 0 && i > 0 {
                    continue;
                }
                prefixes[i + fixed] += 1;
            }
        }
    }
    Ok((0..=max_length)
        .map(|len| {
            (0..=len).fold(C::zero(), |acc, k| {
                acc + C::from(prefixes[k]) * tails[len - k].clone()
            })
        })
        .collect())
}

fn serialize_count<S: Serializer>(value: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    match value.to_u64() {
        Some(v) => s.serialize_u64(v),
        None => s.serialize_str(&value.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesRow {
    pub length: usize,
    #[serde(serialize_with = "serialize_count")]
    pub normal_forms: BigUint,
    #[serde(serialize_with = "serialize_count")]
    pub avoiding: BigUint,
    /// Class count from congruence closure, when within budget.
    pub explorer_classes: Option<usize>,
    /// Singleton classes from congruence closure, when within budget.
    pub explorer_singletons: Option<usize>,
}

impl SeriesRow {
    /// Normal forms match explorer classes and avoiding words match
    /// singleton classes, wherever the explorer ran.
    pub fn agrees(&self) -> bool {
        let classes_ok = self
            .explorer_classes
            .is_none_or(|c| BigUint::from(c) == self.normal_forms);
        let singles_ok = self
            .explorer_singletons
            .is_none_or(|c| BigUint::from(c) == self.avoiding);
        classes_ok && singles_ok
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub n: usize,
    pub rows: Vec<SeriesRow>,
}

impl SeriesReport {
    pub fn all_agree(&self) -> bool {
        self.rows.iter().all(SeriesRow::agrees)
    }

    pub fn mismatches(&self) -> Vec<usize> {
        self.rows
            .iter()
            .filter(|r| !r.agrees())
            .map(|r| r.length)
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
        let mut out =
            String::from("length,normal_forms,avoiding,explorer_classes,explorer_singletons\n");
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{}",
                r.length,
                r.normal_forms,
                r.avoiding,
                opt(r.explorer_classes),
                opt(r.explorer_singletons)
            )
            .unwrap();
        }
        out
    }
}

impl fmt::Display for SeriesReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>4} {:>14} {:>14} {:>10} {:>10}",
            "len", "normal_forms", "avoiding", "classes", "singletons"
        )?;
        for r in &self.rows {
            let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
            writeln!(
                f,
                "{:>4} {:>14} {:>14} {:>10} {:>10}{}",
                r.length,
                r.normal_forms,
                r.avoiding,
                opt(r.explorer_classes),
                opt(r.explorer_singletons),
                if r.agrees() { "" } else { "  MISMATCH" }
            )?;
        }
        Ok(())
    }
}

/// Side-by-side counts; the explorer columns stop where `n^ℓ` exceeds `budget`.
pub fn series_report(n: usize, max_length: usize, budget: Budget) -> Result<SeriesReport> {
    let normal_forms: Vec<BigUint> = count_normal_forms(n, max_length)?;
    let avoiding: Vec<BigUint> = count_avoiding(n, max_length)?;
    let p = Presentation::cyclic(n)?;
    let mut rows = Vec::with_capacity(max_length + 1);
    for (length, (nf, av)) in normal_forms.into_iter().zip(avoiding).enumerate() {
        let table = match budget.check(n, length) {
            Ok(_) => Some(build_table(&p, length, budget)?),
            Err(_) => None,
        };
        rows.push(SeriesRow {
            length,
            normal_forms: nf,
            avoiding: av,
            explorer_classes: table.as_ref().map(|t| t.class_count()),
            explorer_singletons: table.as_ref().map(|t| t.singleton_count()),
        });
    }
    Ok(SeriesReport { n, rows })
}
