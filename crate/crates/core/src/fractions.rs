//! The group of fractions `G = S_n <z>^{-1} ≅ F_{n-1} × C`.
//!
//! `F_{n-1}` is free on `x_1, ..., x_{n-1}` (with `x_n = (x_1 ... x_{n-1})^{-1}`)
//! and `C` is infinite cyclic on `c`. The homomorphism `φ` sends
//! `a_k ↦ x_k` for `k < n` and `a_n ↦ x_n c`; its inverse `ψ` sends
//! `x_k ↦ a_k` and `c ↦ z`.
//!
//! Exponents are generic so callers can trade `i64` for `BigInt` when words
//! get long.

use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rewrite::CyclicMonoid;
use crate::word::Word;

/// Integer types usable as exponents.
pub trait Exponent: Signed + Clone + Ord + fmt::Debug + fmt::Display {}

impl<T: Signed + Clone + Ord + fmt::Debug + fmt::Display> Exponent for T {}

/// A freely reduced word in `x_1, ..., x_{n-1}`, stored as syllables
/// `(generator, nonzero exponent)` with no two neighbours on the same
/// generator.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FreeWord<E = i64> {
    syllables: Vec<(u8, E)>,
}

impl<E: Exponent> FreeWord<E> {
    pub fn identity() -> Self {
        FreeWord {
            syllables: Vec::new(),
        }
    }

    pub fn generator(gen: u8) -> Self {
        FreeWord {
            syllables: vec![(gen, E::one())],
        }
    }

    /// Builds a word from arbitrary syllables, reducing freely.
    pub fn from_syllables(syllables: impl IntoIterator<Item = (u8, E)>) -> Self {
        let mut out = Self::identity();
        for (gen, exp) in syllables {
            out.push(gen, exp);
        }
        out
    }

    pub fn syllables(&self) -> &[(u8, E)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Appends `gen^exp`, merging or cancelling with the last syllable.
    fn push(&mut self, gen: u8, exp: E) {
        if exp.is_zero() {
            return;
        }
        match self.syllables.last_mut() {
            Some((last, e)) if *last == gen => {
                let merged = e.clone() + exp;
                if merged.is_zero() {
                    self.syllables.pop();
                } else {
                    *e = merged;
                }
            }
            _ => self.syllables.push((gen, exp)),
        }
    }

    pub fn mul(&self, other: &FreeWord<E>) -> FreeWord<E> {
        let mut out = self.clone();
        for (gen, exp) in &other.syllables {
            out.push(*gen, exp.clone());
        }
        out
    }

    pub fn inverse(&self) -> FreeWord<E> {
        FreeWord {
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|(g, e)| (*g, -e.clone()))
                .collect(),
        }
    }

    /// `x_n = x_{n-1}^{-1} ... x_1^{-1}`.
    pub fn last_generator(n: usize) -> Self {
        Self::from_syllables((1..n as u8).rev().map(|g| (g, -E::one())))
    }
}

impl<E: Exponent> fmt::Display for FreeWord<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (idx, (gen, exp)) in self.syllables.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            if exp.is_one() {
                write!(f, "x{gen}")?;
            } else {
                write!(f, "x{gen}^{exp}")?;
            }
        }
        Ok(())
    }
}

/// An element `(f, c^k)` of `F_{n-1} × C`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(bound(
    serialize = "E: Serialize",
    deserialize = "E: Deserialize<'de> + Exponent"
))]
pub struct GroupElement<E = i64> {
    syllables: FreeWord<E>,
    c: E,
}

impl<E: Exponent> GroupElement<E> {
    pub fn identity() -> Self {
        GroupElement {
            syllables: FreeWord::identity(),
            c: E::zero(),
        }
    }

    pub fn new(free: FreeWord<E>, c_exp: E) -> Self {
        GroupElement {
            syllables: free,
            c: c_exp,
        }
    }

    pub fn free_part(&self) -> &FreeWord<E> {
        &self.syllables
    }

    pub fn c_exp(&self) -> &E {
        &self.c
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_identity() && self.c.is_zero()
    }

    pub fn mul(&self, other: &GroupElement<E>) -> GroupElement<E> {
        GroupElement {
            syllables: self.syllables.mul(&other.syllables),
            c: self.c.clone() + other.c.clone(),
        }
    }

    pub fn inverse(&self) -> GroupElement<E> {
        GroupElement {
            syllables: self.syllables.inverse(),
            c: -self.c.clone(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value
    where
        E: Serialize,
    {
        serde_json::to_value(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self>
    where
        E: for<'de> Deserialize<'de>,
    {
        let raw: GroupElement<E> =
            serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        // Re-reduce: the JSON may carry unreduced syllables.
        Ok(GroupElement {
            syllables: FreeWord::from_syllables(raw.syllables.syllables),
            c: raw.c,
        })
    }
}

impl<E: Exponent> fmt::Display for GroupElement<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ; c^{}", self.syllables, self.c)
    }
}

/// `φ` applied letter by letter.
pub fn phi<E: Exponent>(n: usize, w: &Word) -> GroupElement<E> {
    let last = FreeWord::<E>::last_generator(n);
    let mut free = FreeWord::identity();
    let mut c = E::zero();
    for &k in w.letters() {
        if k as usize == n {
            free = free.mul(&last);
            c = c + E::one();
        } else {
            free.push(k, E::one());
        }
    }
    GroupElement { syllables: free, c }
}

/// Equality in `S_n` decided through the embedding into `G`.
pub fn equal_via_group(n: usize, u: &Word, v: &Word) -> bool {
    phi::<i64>(n, u) == phi::<i64>(n, v)
}

/// An element of `G` written as `word · z^power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fraction {
    pub word: Word,
    pub z_power: i64,
}

impl Fraction {
    /// The monoid word when `z_power >= 0`.
    pub fn to_word(&self, n: usize) -> Option<Word> {
        let k = usize::try_from(self.z_power).ok()?;
        Some(self.word.concat(&Word::z(n).power(k)))
    }
}

/// The generator assignment of `ψ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiMap {
    n: usize,
}

pub fn psi_on_generators(n: usize) -> Result<PsiMap> {
    if n < 3 {
        return Err(Error::RankTooSmall { n, min: 3 });
    }
    Ok(PsiMap { n })
}

impl PsiMap {
    /// `ψ(x_k) = a_k` for `1 <= k <= n-1`.
    pub fn x(&self, k: usize) -> Word {
        assert!((1..self.n).contains(&k), "x_{k} is not a free generator");
        Word::from(vec![k as u8])
    }

    /// `ψ(c) = z`.
    pub fn c(&self) -> Word {
        Word::z(self.n)
    }

    /// `a_k^{-1} = (a_{k+1} ... a_n a_1 ... a_{k-1}) z^{-1}`, since that
    /// rotation times `a_k` on the left is `z`.
    fn inverse_letter(&self, k: u8) -> Word {
        let n = self.n as u8;
        Word::from((k + 1..=n).chain(1..k).collect::<Vec<u8>>())
    }

    /// Extends `ψ` to all of `F × C`, moving every `z^{-1}` to the end
    /// (z is central).
    pub fn image<E: Exponent + num_traits::ToPrimitive>(&self, g: &GroupElement<E>) -> Fraction {
        let mut letters = Vec::new();
        let mut z_power = g.c_exp().to_i64().expect("c exponent fits in i64");
        for (gen, exp) in g.free_part().syllables() {
            let count = exp.abs().to_usize().expect("exponent fits in usize");
            if exp.is_positive() {
                letters.extend(std::iter::repeat_n(*gen, count));
            } else {
                let inv = self.inverse_letter(*gen);
                for _ in 0..count {
                    letters.extend_from_slice(inv.letters());
                }
                z_power -= count as i64;
            }
        }
        Fraction {
            word: Word::from(letters),
            z_power,
        }
    }

    /// Checks `φ(ψ(x_k)) = x_k` and `φ(ψ(c)) = c`.
    pub fn verify_inverse(&self) -> bool {
        let gens_ok = (1..self.n).all(|k| {
            phi::<i64>(self.n, &self.x(k)) == GroupElement::new(FreeWord::generator(k as u8), 0)
        });
        gens_ok && phi::<i64>(self.n, &self.c()) == GroupElement::new(FreeWord::identity(), 1)
    }

    /// Checks `ψ(φ(w)) = w` in `S_n` for a monoid word, clearing any negative
    /// power of `z` by cancellation.
    pub fn round_trips(&self, monoid: &CyclicMonoid, w: &Word) -> bool {
        let back = self.image(&phi::<i64>(self.n, w));
        if back.z_power >= 0 {
            monoid.equal(&back.to_word(self.n).unwrap(), w)
        } else {
            let lifted = w.concat(&Word::z(self.n).power((-back.z_power) as usize));
            monoid.equal(&back.word, &lifted)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type G = GroupElement<i64>;

    fn fw(s: &[(u8, i64)]) -> FreeWord<i64> {
        FreeWord::from_syllables(s.iter().copied())
    }

    #[test]
    fn phi_examples() {
        assert_eq!(
            phi::<i64>(3, &Word::from([1, 2, 3])),
            G::new(FreeWord::identity(), 1)
        );
        assert_eq!(
            phi::<i64>(3, &Word::from([2, 3, 1])),
            G::new(FreeWord::identity(), 1)
        );
        assert_eq!(
            phi::<i64>(3, &Word::from([2, 1])),
            G::new(fw(&[(2, 1), (1, 1)]), 0)
        );
    }

    #[test]
    fn phi_of_last_letter_renders() {
        let g = phi::<i64>(3, &Word::from([3]));
        assert_eq!(g.to_string(), "x2^-1 x1^-1 ; c^1");
        assert_eq!(phi::<i64>(3, &Word::empty()).to_string(), "1 ; c^0");
        assert_eq!(phi::<i64>(3, &Word::from([1, 2, 3])).to_string(), "1 ; c^1");
        assert_eq!(
            phi::<i64>(3, &Word::from([1, 1, 2])).to_string(),
            "x1^2 x2 ; c^0"
        );
    }

    #[test]
    fn multiplication_examples() {
        let a = G::new(fw(&[(1, 1)]), 0);
        let b = G::new(fw(&[(1, -1)]), 2);
        assert_eq!(a.mul(&b), G::new(FreeWord::identity(), 2));

        let c = G::new(fw(&[(1, 1), (2, 1)]), 1);
        let d = G::new(FreeWord::identity(), -1);
        assert_eq!(c.mul(&d), G::new(fw(&[(1, 1), (2, 1)]), 0));

        let lhs = phi::<i64>(3, &Word::from([2, 3])).mul(&phi(3, &Word::from([1])));
        assert_eq!(lhs, G::new(FreeWord::identity(), 1));
        assert_eq!(lhs, phi(3, &Word::from([2, 3, 1])));
    }

    #[test]
    fn inverse_examples() {
        let g = G::new(fw(&[(1, 1), (2, 1)]), 1);
        assert_eq!(g.inverse(), G::new(fw(&[(2, -1), (1, -1)]), -1));
        assert_eq!(G::identity().inverse(), G::identity());
        assert!(g.mul(&g.inverse()).is_identity());
    }

    #[test]
    fn free_reduction_is_eager() {
        let w = fw(&[(1, 2), (1, -2), (2, 1), (3, 1), (3, -1), (2, 2)]);
        assert_eq!(w.syllables(), &[(2, 3)]);
        for pair in w.syllables().windows(2) {
            assert_ne!(pair[0].0, pair[1].0);
        }
    }

    #[test]
    fn psi_on_generators_round_trips() {
        let psi = psi_on_generators(3).unwrap();
        assert_eq!(psi.x(1), Word::from([1]));
        assert_eq!(phi::<i64>(3, &psi.x(1)), G::new(FreeWord::generator(1), 0));
        assert_eq!(psi.c(), Word::from([1, 2, 3]));
        assert_eq!(phi::<i64>(3, &psi.c()), G::new(FreeWord::identity(), 1));
        assert!(psi.verify_inverse());
        for n in 3..=6 {
            assert!(psi_on_generators(n).unwrap().verify_inverse());
        }
        assert!(psi_on_generators(2).is_err());
    }

    #[test]
    fn psi_extends_homomorphically() {
        let psi = psi_on_generators(3).unwrap();
        let g = G::new(fw(&[(2, 1), (1, 1)]), 0);
        let img = psi.image(&g);
        assert_eq!(
            img,
            Fraction {
                word: Word::from([2, 1]),
                z_power: 0
            }
        );
        assert_eq!(phi::<i64>(3, &img.word), g);
    }

    #[test]
    fn phi_after_psi_is_identity_on_group() {
        let psi = psi_on_generators(4).unwrap();
        let samples = [
            G::new(fw(&[(1, -2), (3, 1), (2, -1)]), 3),
            G::new(fw(&[(3, -1)]), -2),
            G::identity(),
        ];
        for g in samples {
            let f = psi.image(&g);
            let back = phi::<i64>(4, &f.word).mul(&G::new(FreeWord::identity(), f.z_power));
            assert_eq!(back, g);
        }
    }

    #[test]
    fn equality_via_group_examples() {
        assert!(equal_via_group(
            3,
            &Word::from([2, 3, 1]),
            &Word::from([1, 2, 3])
        ));
        assert!(!equal_via_group(
            3,
            &Word::from([1, 2]),
            &Word::from([2, 1])
        ));
        assert!(equal_via_group(3, &Word::empty(), &Word::empty()));
    }

    #[test]
    fn c_exponent_counts_last_letter() {
        for w in Word::all_up_to(3, 5) {
            let count = w.letters().iter().filter(|&&k| k == 3).count() as i64;
            assert_eq!(*phi::<i64>(3, &w).c_exp(), count);
        }
    }

    #[test]
    fn big_exponents_agree_with_machine_ints() {
        for w in Word::all_up_to(4, 4) {
            let small = phi::<i64>(4, &w);
            let big = phi::<BigInt>(4, &w);
            assert_eq!(small.to_string(), big.to_string());
        }
    }

    #[test]
    fn json_shape() {
        let g = phi::<i64>(3, &Word::from([3, 1]));
        let json = g.to_json();
        assert_eq!(json, serde_json::json!({"syllables": [[2, -1]], "c": 1}));
        assert_eq!(G::from_json(&json.to_string()).unwrap(), g);
        let unreduced = G::from_json(r#"{"syllables": [[1, 2], [1, -2]], "c": 0}"#).unwrap();
        assert!(unreduced.is_identity());
    }
}
