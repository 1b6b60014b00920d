use thiserror::Error;

use crate::word::Word;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error in {input:?}: {reason}")]
    Syntax { input: String, reason: String },

    #[error("letter {token:?} is outside the alphabet 1..={n}")]
    LetterOutOfRange { token: String, n: usize },

    #[error("invalid permutation {0:?}")]
    InvalidPermutation(String),

    #[error("permutations of mixed degree: expected {expected}, found {found}")]
    MixedDegrees { expected: usize, found: usize },

    #[error("rank n={n} is not supported here (need n >= {min})")]
    RankTooSmall { n: usize, min: usize },

    #[error("no redex {redex} at position {position} in {word}")]
    InvalidRedex {
        redex: String,
        position: usize,
        word: Word,
    },

    #[error("word {0} is not irreducible")]
    NotIrreducible(Word),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("enumeration needs {required} word slots but the budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("words have different lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("z = a_1...a_n is not central: z*a_{letter} differs from a_{letter}*z")]
    NotCentral { letter: usize },

    #[error("the permutation set does not contain the full cycle (1,2,...,{n})")]
    MissingCycle { n: usize },

    #[error("unsupported permutation set: {0}")]
    UnsupportedPresentation(String),

    #[error("malformed JSON: {0}")]
    Json(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
