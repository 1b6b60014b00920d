//! Slow reference implementations used to cross-check the fast paths.
//!
//! Nothing here shares code with the rewriting engine or the automata beyond
//! the [`Word`] type and the congruence tables.

use std::collections::HashSet;

use crate::error::Result;
use crate::explorer::CongruenceTable;
use crate::rewrite::NormalForm;
use crate::word::Word;

fn is_rotation_of_z(n: usize, window: &[u8]) -> bool {
    (0..n).any(|shift| (0..n).all(|k| window[k] as usize == (shift + k) % n + 1))
}

/// Tail condition checked letter by letter.
pub fn tail_ok(n: usize, b: &[u8]) -> bool {
    let block: Vec<u8> = (2..=n as u8).collect();
    if b.first() == Some(&1) || b.starts_with(&block) {
        return false;
    }
    b.len() < n || !b.windows(n).any(|w| is_rotation_of_z(n, w))
}

/// Every quadruple `(i, ε, j, b)` satisfying the side constraint and the tail
/// condition whose word equals `w`, found by trying all prefix shapes.
pub fn constrained_parses(n: usize, w: &Word) -> Vec<NormalForm> {
    let letters = w.letters();
    let z: Vec<u8> = (1..=n as u8).collect();
    let block: Vec<u8> = (2..=n as u8).collect();
    let mut out = Vec::new();
    for eps in 0..=1u8 {
        for i in 0..=letters.len() {
            for j in 0..=letters.len() / (n - 1) {
                if j >= 1 && eps == 0 && i > 0 {
                    continue;
                }
                let mut prefix = vec![1u8; i];
                if eps == 1 {
                    prefix.extend_from_slice(&z);
                }
                for _ in 0..j {
                    prefix.extend_from_slice(&block);
                }
                if !letters.starts_with(&prefix) {
                    continue;
                }
                let tail = &letters[prefix.len()..];
                if tail_ok(n, tail) {
                    out.push(NormalForm {
                        i,
                        eps,
                        j,
                        tail: Word::from(tail),
                    });
                }
            }
        }
    }
    out
}

/// Representatives of the classes in a table that contain a word starting
/// with `1 2 ... n`, i.e. the elements of the ideal `z S`.
pub fn ideal_classes(table: &CongruenceTable) -> Result<HashSet<Word>> {
    let n = table.rank();
    let mut out = HashSet::new();
    if table.length() < n {
        return Ok(out);
    }
    let z = Word::z(n);
    for s in Word::all_of_length(n, table.length() - n) {
        out.insert(table.representative(&z.concat(&s))?);
    }
    Ok(out)
}

/// Number of words of length `len` over `n` letters with no rotation of
/// `1 2 ... n` as a factor, by enumeration.
pub fn count_avoiding_brute(n: usize, len: usize) -> usize {
    Word::all_of_length(n, len)
        .filter(|w| w.len() < n || !w.letters().windows(n).any(|x| is_rotation_of_z(n, x)))
        .count()
}

/// `C(a, b)` by the multiplicative formula.
pub fn binomial(a: u64, b: u64) -> u64 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    (0..b).fold(1u64, |acc, k| acc * (a - k) / (k + 1))
}
