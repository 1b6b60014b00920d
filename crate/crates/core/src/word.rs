//! Words over the generators `a_1, ..., a_n`.
//!
//! A generator `a_k` is stored as the letter `k`. Words carry no rank of their
//! own; the rank is checked when a word is parsed or validated.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported rank; letters are stored as bytes.
pub const MAX_RANK: usize = u8::MAX as usize;
/// A finite sequence of generator indices. The empty word is the identity.
/// `Ord` is plain lexicographic order; see [`Word::cmp_length_lex`].
/// A finite sequence of generator indices. The empty word is the identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word and checks every letter lies in `1..=n`.
    pub fn checked(letters: Vec<u8>, n: usize) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&k| k == 0 || k as usize > n) {
            return Err(Error::LetterOutOfRange {
                token: bad.to_string(),
                n,
            });
        }
        Ok(Word(letters))
    }

    /// `a_1 a_2 ... a_n`, the distinguished central word `z`.
    pub fn z(n: usize) -> Self {
        Word((1..=n as u8).collect())
    }

    /// `a_2 ... a_n`.
    pub fn tail_block(n: usize) -> Self {
        Word((2..=n as u8).collect())
    }

    pub fn power(&self, exp: usize) -> Self {
        Word(self.0.repeat(exp))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn starts_with(&self, prefix: &[u8]) -> bool {
        self.0.starts_with(prefix)
    }

    /// True when `factor` occurs somewhere in the word.
    pub fn contains_factor(&self, factor: &[u8]) -> bool {
        factor.is_empty() || self.0.windows(factor.len()).any(|w| w == factor)
    }

    /// Number of occurrences of each letter `1..=n` (index 0 is letter 1).
    pub fn multidegree(&self, n: usize) -> Vec<usize> {
        let mut deg = vec![0; n];
        for &k in &self.0 {
            deg[k as usize - 1] += 1;
        }
        deg
    }

    /// Compares in length-lexicographic order with `a_1 < a_2 < ... < a_n`.
    pub fn cmp_length_lex(&self, other: &Word) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }

    /// Every word of the given length over `n` letters, in lexicographic order.
    pub fn all_of_length(n: usize, length: usize) -> impl Iterator<Item = Word> {
        let total = (n as u128).checked_pow(length as u32).unwrap_or(u128::MAX);
        (0..total).map(move |mut idx| {
            let mut letters = vec![1u8; length];
            for slot in letters.iter_mut().rev() {
                *slot = (idx % n as u128) as u8 + 1;
                idx /= n as u128;
            }
            Word(letters)
        })
    }

    /// Every word of length at most `max_length`, shortest first.
    pub fn all_up_to(n: usize, max_length: usize) -> impl Iterator<Item = Word> {
        (0..=max_length).flat_map(move |len| Word::all_of_length(n, len))
    }
}

impl From<Vec<u8>> for Word {
    fn from(letters: Vec<u8>) -> Self {
        Word(letters)
    }
}

impl From<&[u8]> for Word {
    fn from(letters: &[u8]) -> Self {
        Word(letters.to_vec())
    }
}

impl<const N: usize> From<[u8; N]> for Word {
    fn from(letters: [u8; N]) -> Self {
        Word(letters.to_vec())
    }
}

impl Mul for &Word {
    type Output = Word;

    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        for (idx, k) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{:?}", self.0)
    }
}

/// Parses a word over `n` generators.
///
/// Accepts whitespace-separated integers (`"2 3 1"`) or dot-separated `aK`
/// tokens (`"a1.a1.a2"`). An empty or blank string, or `ε`, is the empty word.
pub fn parse_word(text: &str, n: usize) -> Result<Word> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "ε" {
        return Ok(Word::empty());
    }
    let dotted = trimmed.starts_with('a') || trimmed.starts_with('A');
    let tokens: Vec<&str> = if dotted {
        trimmed.split('.').map(str::trim).collect()
    } else {
        trimmed.split_whitespace().collect()
    };
    let mut letters = Vec::with_capacity(tokens.len());
    for token in tokens {
        let digits = if dotted {
            token
                .strip_prefix('a')
                .or_else(|| token.strip_prefix('A'))
                .ok_or_else(|| Error::Syntax {
                    input: text.to_string(),
                    reason: format!("expected a token of the form aK, got {token:?}"),
                })?
        } else {
            token
        };
        let value: usize = digits.parse().map_err(|_| Error::Syntax {
            input: text.to_string(),
            reason: format!("{token:?} is not a generator index"),
        })?;
        if value == 0 || value > n || value > MAX_RANK {
            return Err(Error::LetterOutOfRange {
                token: token.to_string(),
                n,
            });
        }
        letters.push(value as u8);
    }
    Ok(Word(letters))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integer_lists() {
        assert_eq!(parse_word("2 3 1", 3).unwrap(), Word::from([2, 3, 1]));
        assert_eq!(parse_word("  ", 3).unwrap(), Word::empty());
    }

    #[test]
    fn parses_dotted_tokens() {
        assert_eq!(parse_word("a1.a1.a2", 3).unwrap(), Word::from([1, 1, 2]));
    }

    #[test]
    fn rejects_out_of_range_letter() {
        match parse_word("4", 3) {
            Err(Error::LetterOutOfRange { token, n }) => {
                assert_eq!(token, "4");
                assert_eq!(n, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_word("1 0", 3),
            Err(Error::LetterOutOfRange { .. })
        ));
        assert!(matches!(
            parse_word("a1.a9", 3),
            Err(Error::LetterOutOfRange { token, .. }) if token == "a9"
        ));
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse_word("1 x", 3), Err(Error::Syntax { .. })));
        assert!(matches!(parse_word("a1.b2", 3), Err(Error::Syntax { .. })));
    }

    #[test]
    fn display_round_trips() {
        for w in Word::all_up_to(3, 3) {
            assert_eq!(parse_word(&w.to_string(), 3).unwrap(), w);
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Word::all_of_length(3, 0).count(), 1);
        assert_eq!(Word::all_of_length(3, 4).count(), 81);
        assert_eq!(Word::all_up_to(2, 3).count(), 15);
        let words: Vec<Word> = Word::all_of_length(2, 2).collect();
        assert_eq!(
            words,
            vec![
                Word::from([1, 1]),
                Word::from([1, 2]),
                Word::from([2, 1]),
                Word::from([2, 2])
            ]
        );
    }

    #[test]
    fn length_lex_order() {
        use std::cmp::Ordering::*;
        assert_eq!(Word::from([3]).cmp_length_lex(&Word::from([1, 1])), Less);
        assert_eq!(Word::from([1, 2]).cmp_length_lex(&Word::from([2, 1])), Less);
    }
}
