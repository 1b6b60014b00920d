//! Monoids defined by a single family of permutation relations
//! `a_1 a_2 ... a_n = a_σ(1) a_σ(2) ... a_σ(n)` for `σ` in a set `H`.
//!
//! For the cyclic group `H = <(1, 2, ..., n)>` the crate provides a complete
//! rewriting system with normal forms, a bounded confluence checker, the
//! isomorphism of the group of fractions with `F_{n-1} × Z`, and generating
//! series of normal forms. For arbitrary `H` it provides a brute-force
//! congruence explorer and the reduction of the group to a smaller
//! presentation indexed by a point stabilizer.

pub mod acceptance;
pub mod confluence;
pub mod error;
pub mod explorer;
pub mod fractions;
pub mod oracle;
pub mod perm;
pub mod presentation;
pub mod rewrite;
pub mod series;
pub mod word;

use num_bigint::{BigInt, BigUint};

pub use confluence::{
    certify_local_confluence, certify_rules, check_joinable, enumerate_overlaps, CaseClass,
    ConfluenceSummary, JoinReport, OverlapInstance,
};
pub use error::{Error, Result};
pub use explorer::{build_table, stabilizer_reduction, Budget, CongruenceTable, RhoVerdict};
pub use fractions::{phi, psi_on_generators, Fraction, FreeWord, GroupElement, PsiMap};
pub use perm::{close_under_group, parse_permutation, Permutation, PermutationSet};
pub use presentation::Presentation;
pub use rewrite::{CyclicMonoid, NormalForm, Redex, RedexKind, RuleSet};
pub use series::{count_avoiding, count_normal_forms, count_tails, series_report, Count};
pub use word::{parse_word, Word};

/// Group element with machine-word exponents.
pub type Element = GroupElement<i64>;
/// Group element with unbounded exponents.
pub type ElementBig = GroupElement<BigInt>;
/// Free-group word with unbounded exponents.
pub type FreeWordBig = FreeWord<BigInt>;
/// Normal-form counts that cannot overflow.
pub type Counts = Vec<BigUint>;
