//! Confluent rewriting for `S_n = S_n(<(1, 2, ..., n)>)`, `n >= 3`.
//!
//! Three rule families, all length-preserving and strictly decreasing in
//! length-lex order:
//!
//! * `T(i)`, `1 <= i <= n-1`: `a_{i+1} ... a_n a_1 ... a_i -> a_1 a_2 ... a_n`
//! * `R(j, m)`, `2 <= j <= n-1`, `m >= 1`:
//!   `a_j a_1^m a_2 ... a_n -> a_1 a_2 ... a_n a_j a_1^{m-1}`
//! * `R(n, m)`, `m >= 2`: same shape with leading letter `a_n`.
//!
//! Irreducible words are exactly the words
//! `a_1^i z^ε (a_2 ... a_n)^j b` with `z = a_1 ... a_n`, `ε ∈ {0, 1}`,
//! `j >= 1 ⇒ ε = 1 or i = 0`, and a tail `b` that avoids every rotation of
//! `1 2 ... n` and starts neither with `a_1` nor with `a_2 ... a_n`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Word, MAX_RANK};

/// Which rule a redex instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RedexKind {
    /// Rotation `a_{i+1} ... a_n a_1 ... a_i`.
    T(usize),
    /// `a_j a_1^m a_2 ... a_n`.
    R { j: usize, m: usize },
}

impl RedexKind {
    /// Length of the left-hand side.
    pub fn span(&self, n: usize) -> usize {
        match *self {
            RedexKind::T(_) => n,
            RedexKind::R { m, .. } => n + m,
        }
    }
}

impl fmt::Display for RedexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RedexKind::T(i) => write!(f, "T({i})"),
            RedexKind::R { j, m } => write!(f, "R({j},{m})"),
        }
    }
}

/// An occurrence of a rule left-hand side inside a word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Redex {
    pub kind: RedexKind,
    pub position: usize,
}

impl Redex {
    pub fn span(&self, n: usize) -> usize {
        self.kind.span(n)
    }
}

impl fmt::Display for Redex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.kind, self.position)
    }
}

/// The rule list. [`RuleSet::standard`] is the confluent system; the variant
/// with `R(n, 1)` switched on exists so the overlap checker has a negative
/// control.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RuleSet {
    n: usize,
    allow_r_n1: bool,
}

impl RuleSet {
    pub fn standard(n: usize) -> Result<Self> {
        if !(3..=MAX_RANK).contains(&n) {
            return Err(Error::RankTooSmall { n, min: 3 });
        }
        Ok(RuleSet {
            n,
            allow_r_n1: false,
        })
    }

    /// The standard rules plus `R(n, 1)`, which the confluent system omits.
    pub fn with_r_n1(n: usize) -> Result<Self> {
        let mut rules = Self::standard(n)?;
        rules.allow_r_n1 = true;
        Ok(rules)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn includes_r_n1(&self) -> bool {
        self.allow_r_n1
    }

    pub fn is_rule(&self, kind: RedexKind) -> bool {
        let n = self.n;
        match kind {
            RedexKind::T(i) => (1..n).contains(&i),
            RedexKind::R { j, m } => {
                ((2..n).contains(&j) && m >= 1)
                    || (j == n && (m >= 2 || (m == 1 && self.allow_r_n1)))
            }
        }
    }

    pub fn lhs(&self, kind: RedexKind) -> Option<Vec<u8>> {
        if !self.is_rule(kind) {
            return None;
        }
        let n = self.n as u8;
        Some(match kind {
            RedexKind::T(i) => {
                let i = i as u8;
                (i + 1..=n).chain(1..=i).collect()
            }
            RedexKind::R { j, m } => std::iter::once(j as u8)
                .chain(std::iter::repeat_n(1, m))
                .chain(2..=n)
                .collect(),
        })
    }

    pub fn rhs(&self, kind: RedexKind) -> Option<Vec<u8>> {
        if !self.is_rule(kind) {
            return None;
        }
        let n = self.n as u8;
        Some(match kind {
            RedexKind::T(_) => (1..=n).collect(),
            RedexKind::R { j, m } => (1..=n)
                .chain(std::iter::once(j as u8))
                .chain(std::iter::repeat_n(1, m - 1))
                .collect(),
        })
    }

    /// Every rule with run parameter at most `max_m`.
    pub fn instances(&self, max_m: usize) -> Vec<RedexKind> {
        let mut out: Vec<RedexKind> = (1..self.n).map(RedexKind::T).collect();
        for j in 2..=self.n {
            for m in 1..=max_m {
                let kind = RedexKind::R { j, m };
                if self.is_rule(kind) {
                    out.push(kind);
                }
            }
        }
        out
    }

    /// Redexes starting at `pos`, T before R. The a_1-run of an R redex is the
    /// full run following the leading letter, so at most one R fits.
    fn redexes_at(&self, w: &[u8], pos: usize, out: &mut Vec<Redex>) {
        let n = self.n;
        let first = w[pos] as usize;
        if first >= 2 && pos + n <= w.len() {
            let i = first - 1;
            let is_rotation = (0..n).all(|k| w[pos + k] as usize == (i + k) % n + 1);
            if is_rotation {
                out.push(Redex {
                    kind: RedexKind::T(i),
                    position: pos,
                });
            }
        }
        if first >= 2 {
            let m = w[pos + 1..].iter().take_while(|&&c| c == 1).count();
            let block = pos + 1 + m;
            if m >= 1
                && block + n - 1 <= w.len()
                && (0..n - 1).all(|k| w[block + k] as usize == k + 2)
            {
                let kind = RedexKind::R { j: first, m };
                if self.is_rule(kind) {
                    out.push(Redex {
                        kind,
                        position: pos,
                    });
                }
            }
        }
    }

    fn first_redex(&self, w: &[u8]) -> Option<Redex> {
        let mut buf = Vec::with_capacity(2);
        for pos in 0..w.len() {
            self.redexes_at(w, pos, &mut buf);
            if let Some(&r) = buf.first() {
                return Some(r);
            }
        }
        None
    }

    /// All redexes, sorted by position with T before R.
    pub fn find_redexes(&self, w: &Word) -> Vec<Redex> {
        let mut out = Vec::new();
        for pos in 0..w.len() {
            self.redexes_at(w.letters(), pos, &mut out);
        }
        out
    }

    /// Replaces the redex's span with the rule's right-hand side.
    pub fn apply(&self, w: &Word, redex: Redex) -> Result<Word> {
        let invalid = || Error::InvalidRedex {
            redex: redex.kind.to_string(),
            position: redex.position,
            word: w.clone(),
        };
        let lhs = self.lhs(redex.kind).ok_or_else(invalid)?;
        let letters = w.letters();
        let end = redex.position + lhs.len();
        if end > letters.len() || letters[redex.position..end] != lhs[..] {
            return Err(invalid());
        }
        let rhs = self.rhs(redex.kind).expect("rule has a right-hand side");
        let mut out = letters.to_vec();
        out[redex.position..end].copy_from_slice(&rhs);
        Ok(Word::from(out))
    }

    fn apply_unchecked(&self, w: &mut [u8], redex: Redex) {
        let rhs = self
            .rhs(redex.kind)
            .expect("redex kinds come from this rule set");
        w[redex.position..redex.position + rhs.len()].copy_from_slice(&rhs);
    }

    /// Leftmost-first reduction to the irreducible word; also returns the
    /// number of rewrite steps taken.
    pub fn normal_form_counted(&self, w: &Word) -> (Word, usize) {
        let mut letters = w.letters().to_vec();
        let mut steps = 0;
        while let Some(r) = self.first_redex(&letters) {
            self.apply_unchecked(&mut letters, r);
            steps += 1;
        }
        (Word::from(letters), steps)
    }

    pub fn normal_form(&self, w: &Word) -> Word {
        self.normal_form_counted(w).0
    }

    /// Reduces by picking a uniformly random redex at every step.
    pub fn reduce_randomly<R: Rng + ?Sized>(&self, w: &Word, rng: &mut R) -> (Word, usize) {
        let mut current = w.clone();
        let mut steps = 0;
        loop {
            let redexes = self.find_redexes(&current);
            if redexes.is_empty() {
                return (current, steps);
            }
            let pick = redexes[rng.random_range(0..redexes.len())];
            let mut letters = current.into_letters();
            self.apply_unchecked(&mut letters, pick);
            current = Word::from(letters);
            steps += 1;
        }
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.first_redex(w.letters()).is_none()
    }
}

/// The decomposition `a_1^i z^eps (a_2 ... a_n)^j tail` of an element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalForm {
    pub i: usize,
    pub eps: u8,
    pub j: usize,
    pub tail: Word,
}

impl NormalForm {
    pub fn to_word(&self, n: usize) -> Word {
        let mut letters = vec![1u8; self.i];
        letters.extend(Word::z(n).power(self.eps as usize).letters());
        letters.extend(Word::tail_block(n).power(self.j).letters());
        letters.extend(self.tail.letters());
        Word::from(letters)
    }

    pub fn satisfies_side_constraint(&self) -> bool {
        self.eps <= 1 && (self.j == 0 || self.eps == 1 || self.i == 0)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "i={} ε={} j={} b={}",
            self.i, self.eps, self.j, self.tail
        )
    }
}

/// True when `b` is an admissible tail: no rotation of `1 2 ... n` as a
/// factor, and no leading `a_1` or `a_2 ... a_n`.
pub fn is_admissible_tail(n: usize, b: &Word) -> bool {
    if b.starts_with(&[1]) || b.starts_with(Word::tail_block(n).letters()) {
        return false;
    }
    !contains_rotation(n, b.letters())
}

/// Whether `w` has a factor that is some rotation of `1 2 ... n`.
pub fn contains_rotation(n: usize, w: &[u8]) -> bool {
    w.windows(n).any(|win| {
        let start = win[0] as usize;
        (0..n).all(|k| win[k] as usize == (start - 1 + k) % n + 1)
    })
}

/// The monoid `S_n` with its word problem solved by rewriting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclicMonoid {
    rules: RuleSet,
}

impl CyclicMonoid {
    pub fn new(n: usize) -> Result<Self> {
        Ok(CyclicMonoid {
            rules: RuleSet::standard(n)?,
        })
    }

    pub fn rank(&self) -> usize {
        self.rules.n
    }

    pub fn rules(&self) -> &RuleSet {
        &self.rules
    }

    /// Checks that every letter of `w` lies in `1..=n`.
    pub fn check_word(&self, w: &Word) -> Result<()> {
        Word::checked(w.letters().to_vec(), self.rank()).map(|_| ())
    }

    pub fn z(&self) -> Word {
        Word::z(self.rank())
    }

    pub fn find_redexes(&self, w: &Word) -> Vec<Redex> {
        self.rules.find_redexes(w)
    }

    pub fn apply(&self, w: &Word, redex: Redex) -> Result<Word> {
        self.rules.apply(w, redex)
    }

    /// The length-lex-minimal word representing the same element.
    pub fn normal_form(&self, w: &Word) -> Word {
        self.rules.normal_form(w)
    }

    pub fn decompose(&self, w: &Word) -> Result<NormalForm> {
        if !self.rules.is_irreducible(w) {
            return Err(Error::NotIrreducible(w.clone()));
        }
        let n = self.rank();
        let letters = w.letters();
        let ones = letters.iter().take_while(|&&c| c == 1).count();
        let block = Word::tail_block(n);
        let mut pos = ones;
        let mut blocks = 0;
        while letters[pos..].starts_with(block.letters()) {
            pos += n - 1;
            blocks += 1;
        }
        let tail = Word::from(&letters[pos..]);
        // A leading run of a_1 followed by a_2...a_n contains z; the
        // side constraint forces that z to be the z^ε factor.
        let nf = if ones >= 1 && blocks >= 1 {
            NormalForm {
                i: ones - 1,
                eps: 1,
                j: blocks - 1,
                tail,
            }
        } else {
            NormalForm {
                i: ones,
                eps: 0,
                j: blocks,
                tail,
            }
        };
        debug_assert!(nf.satisfies_side_constraint());
        debug_assert!(is_admissible_tail(n, &nf.tail));
        Ok(nf)
    }

    /// Normal form of `u · v`.
    pub fn multiply(&self, u: &Word, v: &Word) -> Word {
        self.normal_form(&u.concat(v))
    }

    pub fn equal(&self, u: &Word, v: &Word) -> bool {
        u.len() == v.len() && self.normal_form(u) == self.normal_form(v)
    }

    /// Membership in the ideal `P = z S_n`.
    pub fn is_in_p(&self, w: &Word) -> bool {
        let nf = self.normal_form(w);
        self.decompose(&nf)
            .expect("normal forms are irreducible")
            .eps
            == 1
    }

    /// Least `i` with `a · a_i a_i · b ∉ P`, for `a, b ∉ P`.
    pub fn prime_witness(&self, a: &Word, b: &Word) -> Result<usize> {
        if self.is_in_p(a) || self.is_in_p(b) {
            return Err(Error::Precondition(format!(
                "prime_witness needs both words outside P, got {a} and {b}"
            )));
        }
        (1..=self.rank())
            .find(|&i| {
                let square = Word::from(vec![i as u8, i as u8]);
                !self.is_in_p(&a.concat(&square).concat(b))
            })
            .ok_or_else(|| Error::Precondition(format!("no witness for {a} and {b}")))
    }
}
