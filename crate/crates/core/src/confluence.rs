//! Bounded critical-pair analysis for the rules of [`crate::rewrite`].
//!
//! Every pair of rule left-hand sides (run parameters up to `max_m`) is
//! placed at every offset where the two occurrences share letters; the
//! ambient word is the shortest word hosting both. Each one-step divergence
//! is then reduced to normal form on both sides. Termination is known, so
//! comparing terminal words decides joinability.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rewrite::{Redex, RedexKind, RuleSet};
use crate::word::Word;

/// Pattern families: rotations, `a_j a_1^m a_2...a_n` with `j < n`, and the
/// same with `j = n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Alpha,
    Beta,
    Gamma,
}

impl Family {
    pub fn of(kind: RedexKind, n: usize) -> Family {
        match kind {
            RedexKind::T(_) => Family::Alpha,
            RedexKind::R { j, .. } if j == n => Family::Gamma,
            RedexKind::R { .. } => Family::Beta,
        }
    }
}

/// Unordered family pair of an overlap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseClass {
    AlphaAlpha,
    AlphaBeta,
    AlphaGamma,
    BetaBeta,
    BetaGamma,
    GammaGamma,
}

impl CaseClass {
    pub fn of(a: Family, b: Family) -> CaseClass {
        use Family::*;
        match (a.min(b), a.max(b)) {
            (Alpha, Alpha) => CaseClass::AlphaAlpha,
            (Alpha, Beta) => CaseClass::AlphaBeta,
            (Alpha, Gamma) => CaseClass::AlphaGamma,
            (Beta, Beta) => CaseClass::BetaBeta,
            (Beta, Gamma) => CaseClass::BetaGamma,
            (Gamma, Gamma) => CaseClass::GammaGamma,
            _ => unreachable!("min/max ordered"),
        }
    }

    /// False for β-β: past its first letter, a β pattern has no `a_j` with
    /// `2 <= j < n` followed by `a_1`, so no second β pattern starts inside it.
    pub fn can_occur(&self) -> bool {
        *self != CaseClass::BetaBeta
    }

    pub const ALL: [CaseClass; 6] = [
        CaseClass::AlphaAlpha,
        CaseClass::AlphaBeta,
        CaseClass::AlphaGamma,
        CaseClass::BetaBeta,
        CaseClass::BetaGamma,
        CaseClass::GammaGamma,
    ];
}

impl fmt::Display for CaseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            CaseClass::AlphaAlpha => "α-α",
            CaseClass::AlphaBeta => "α-β",
            CaseClass::AlphaGamma => "α-γ",
            CaseClass::BetaBeta => "β-β",
            CaseClass::BetaGamma => "β-γ",
            CaseClass::GammaGamma => "γ-γ",
        };
        f.write_str(name)
    }
}

/// How two redex spans sit relative to each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Placement {
    /// Proper overlap: they share letters and neither contains the other.
    Overlapping,
    /// One span lies inside the other. No such pair exists in the confluent
    /// rule list.
    Nested,
    Disjoint,
}

/// Two redexes inside one ambient word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OverlapInstance {
    pub n: usize,
    pub left: Redex,
    pub right: Redex,
    pub ambient: Word,
}

impl OverlapInstance {
    /// Checks that both left-hand sides occur where claimed.
    pub fn new(rules: &RuleSet, left: Redex, right: Redex, ambient: Word) -> Result<Self> {
        for r in [left, right] {
            rules.apply(&ambient, r)?;
        }
        if left == right {
            return Err(Error::Precondition(
                "an overlap needs two distinct redexes".into(),
            ));
        }
        Ok(OverlapInstance {
            n: rules.rank(),
            left,
            right,
            ambient,
        })
    }

    pub fn placement(&self) -> Placement {
        let (s, p) = (self.left.position, self.left.span(self.n));
        let (u, q) = (self.right.position, self.right.span(self.n));
        if s + p <= u || u + q <= s {
            Placement::Disjoint
        } else if (s <= u && u + q <= s + p) || (u <= s && s + p <= u + q) {
            Placement::Nested
        } else {
            Placement::Overlapping
        }
    }

    pub fn case_class(&self) -> CaseClass {
        CaseClass::of(
            Family::of(self.left.kind, self.n),
            Family::of(self.right.kind, self.n),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JoinReport {
    pub instance: OverlapInstance,
    pub left_result: Word,
    pub right_result: Word,
    /// Normal form reached from the left result.
    pub left_normal_form: Word,
    /// Normal form reached from the right result.
    pub right_normal_form: Word,
    pub left_path_length: usize,
    pub right_path_length: usize,
    pub joinable: bool,
}

impl JoinReport {
    pub fn common_descendant(&self) -> Option<&Word> {
        self.joinable.then_some(&self.left_normal_form)
    }
}

/// Applies each redex once, then reduces both results to normal form.
pub fn check_joinable(rules: &RuleSet, inst: &OverlapInstance) -> Result<JoinReport> {
    let left_result = rules.apply(&inst.ambient, inst.left)?;
    let right_result = rules.apply(&inst.ambient, inst.right)?;
    let (left_nf, left_steps) = rules.normal_form_counted(&left_result);
    let (right_nf, right_steps) = rules.normal_form_counted(&right_result);
    Ok(JoinReport {
        instance: inst.clone(),
        joinable: left_nf == right_nf,
        left_result,
        right_result,
        left_normal_form: left_nf,
        right_normal_form: right_nf,
        left_path_length: left_steps,
        right_path_length: right_steps,
    })
}

/// All placements of two rule instances (run parameters `<= max_m`) whose
/// spans share at least one letter, including nested placements. The redex
/// that starts first is `left`; equal starts are ordered by rule.
pub fn enumerate_overlaps_for(rules: &RuleSet, max_m: usize) -> Vec<OverlapInstance> {
    let n = rules.rank();
    let kinds = rules.instances(max_m);
    let patterns: Vec<(RedexKind, Vec<u8>)> = kinds
        .iter()
        .map(|&k| (k, rules.lhs(k).expect("listed rules have patterns")))
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (a_kind, a) in &patterns {
        for (b_kind, b) in &patterns {
            for offset in 0..a.len() {
                if offset == 0 && a_kind >= b_kind {
                    continue;
                }
                let shared = (a.len() - offset).min(b.len());
                if a[offset..offset + shared] != b[..shared] {
                    continue;
                }
                let mut ambient = a.clone();
                if offset + b.len() > a.len() {
                    ambient.extend_from_slice(&b[a.len() - offset..]);
                }
                let left = Redex {
                    kind: *a_kind,
                    position: 0,
                };
                let right = Redex {
                    kind: *b_kind,
                    position: offset,
                };
                let ambient = Word::from(ambient);
                if seen.insert((ambient.clone(), left, right)) {
                    out.push(OverlapInstance {
                        n,
                        left,
                        right,
                        ambient,
                    });
                }
            }
        }
    }
    out
}

/// [`enumerate_overlaps_for`] with the confluent rule list.
pub fn enumerate_overlaps(n: usize, max_m: usize) -> Result<Vec<OverlapInstance>> {
    if max_m < 2 {
        return Err(Error::Precondition(format!(
            "max_m must be >= 2, got {max_m}"
        )));
    }
    Ok(enumerate_overlaps_for(&RuleSet::standard(n)?, max_m))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CaseStats {
    pub instances: usize,
    pub joinable: usize,
    pub max_left_path: usize,
    pub max_right_path: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConfluenceSummary {
    pub n: usize,
    pub max_m: usize,
    pub includes_r_n1: bool,
    pub per_case: BTreeMap<CaseClass, CaseStats>,
    /// β-β overlaps cannot occur; this records that none were found.
    pub beta_beta_empty: bool,
    /// Overlaps whose one-step results reach different normal forms.
    pub non_joinable: Vec<JoinReport>,
    /// Nested placements: one left-hand side contains another.
    pub malformed: Vec<OverlapInstance>,
}

impl ConfluenceSummary {
    pub fn total_instances(&self) -> usize {
        self.per_case.values().map(|s| s.instances).sum()
    }

    /// Every overlap joins, nothing is nested, and no β-β overlap exists.
    pub fn is_certified(&self) -> bool {
        self.non_joinable.is_empty() && self.malformed.is_empty() && self.beta_beta_empty
    }
}

impl fmt::Display for ConfluenceSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "n={} max_m={}{}: {} overlaps",
            self.n,
            self.max_m,
            if self.includes_r_n1 { " (+R(n,1))" } else { "" },
            self.total_instances()
        )?;
        for (class, stats) in &self.per_case {
            writeln!(
                f,
                "  {class}: {} instances, {} joinable, max path {}/{}",
                stats.instances, stats.joinable, stats.max_left_path, stats.max_right_path
            )?;
        }
        writeln!(
            f,
            "  β-β overlaps: {}",
            if self.beta_beta_empty {
                "none"
            } else {
                "FOUND"
            }
        )?;
        for bad in &self.malformed {
            writeln!(
                f,
                "  nested: {} and {} in {}",
                bad.left, bad.right, bad.ambient
            )?;
        }
        for bad in &self.non_joinable {
            writeln!(
                f,
                "  not joinable: {} and {} in {} -> {} vs {}",
                bad.instance.left,
                bad.instance.right,
                bad.instance.ambient,
                bad.left_normal_form,
                bad.right_normal_form
            )?;
        }
        if self.is_certified() {
            write!(f, "all overlaps joinable")
        } else {
            write!(f, "local confluence NOT certified")
        }
    }
}

/// Runs [`check_joinable`] over every enumerated overlap of `rules`.
pub fn certify_rules(rules: &RuleSet, max_m: usize) -> ConfluenceSummary {
    let mut per_case: BTreeMap<CaseClass, CaseStats> = CaseClass::ALL
        .iter()
        .map(|&c| (c, CaseStats::default()))
        .collect();
    let mut non_joinable = Vec::new();
    let mut malformed = Vec::new();
    for inst in enumerate_overlaps_for(rules, max_m) {
        if inst.placement() == Placement::Nested {
            malformed.push(inst.clone());
        }
        let report = check_joinable(rules, &inst).expect("enumerated instances are valid");
        let stats = per_case.get_mut(&inst.case_class()).unwrap();
        stats.instances += 1;
        stats.max_left_path = stats.max_left_path.max(report.left_path_length);
        stats.max_right_path = stats.max_right_path.max(report.right_path_length);
        if report.joinable {
            stats.joinable += 1;
        } else {
            non_joinable.push(report);
        }
    }
    ConfluenceSummary {
        n: rules.rank(),
        max_m,
        includes_r_n1: rules.includes_r_n1(),
        beta_beta_empty: per_case[&CaseClass::BetaBeta].instances == 0,
        per_case,
        non_joinable,
        malformed,
    }
}

pub fn certify_local_confluence(n: usize, max_m: usize) -> Result<ConfluenceSummary> {
    if max_m < 2 {
        return Err(Error::Precondition(format!(
            "max_m must be >= 2, got {max_m}"
        )));
    }
    Ok(certify_rules(&RuleSet::standard(n)?, max_m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w<const N: usize>(letters: [u8; N]) -> Word {
        Word::from(letters)
    }

    fn find<'a>(
        list: &'a [OverlapInstance],
        ambient: &Word,
        left: RedexKind,
        right: RedexKind,
    ) -> Option<&'a OverlapInstance> {
        list.iter()
            .find(|i| &i.ambient == ambient && i.left.kind == left && i.right.kind == right)
    }

    #[test]
    fn case_one_instance_present_and_joins() {
        let list = enumerate_overlaps(3, 2).unwrap();
        let inst = find(&list, &w([2, 3, 1, 2]), RedexKind::T(1), RedexKind::T(2))
            .expect("T(1)@0 with T(2)@1");
        assert_eq!(inst.right.position, 1);
        assert_eq!(inst.case_class(), CaseClass::AlphaAlpha);
        let report = check_joinable(&RuleSet::standard(3).unwrap(), inst).unwrap();
        assert!(report.joinable);
        assert_eq!(report.left_result, w([1, 2, 3, 2]));
        assert_eq!(report.right_result, w([2, 1, 2, 3]));
        assert_eq!(report.common_descendant(), Some(&w([1, 2, 3, 2])));
    }

    #[test]
    fn case_three_instance_present() {
        let list = enumerate_overlaps(3, 2).unwrap();
        let inst = find(
            &list,
            &w([3, 1, 1, 2, 3, 1]),
            RedexKind::R { j: 3, m: 2 },
            RedexKind::T(1),
        )
        .expect("R(3,2)@0 with T(1)@3");
        assert_eq!(inst.right.position, 3);
        assert_eq!(inst.case_class(), CaseClass::AlphaGamma);
        assert_eq!(inst.placement(), Placement::Overlapping);
    }

    #[test]
    fn beta_beta_overlaps_do_not_occur() {
        for n in 3..=6 {
            let list = enumerate_overlaps(n, 4).unwrap();
            assert!(list.iter().all(|i| i.case_class() != CaseClass::BetaBeta));
        }
    }

    #[test]
    fn case_five_joins_at_reduct_of_zz() {
        let rules = RuleSet::standard(3).unwrap();
        let ambient = w([3, 1, 1, 2, 3, 1, 1, 2, 3]);
        let inst = OverlapInstance::new(
            &rules,
            Redex {
                kind: RedexKind::R { j: 3, m: 2 },
                position: 0,
            },
            Redex {
                kind: RedexKind::R { j: 3, m: 2 },
                position: 4,
            },
            ambient,
        )
        .unwrap();
        assert_eq!(inst.case_class(), CaseClass::GammaGamma);
        let report = check_joinable(&rules, &inst).unwrap();
        assert!(report.joinable);
        // Both sides reach z z a_3 a_1^2; its normal form is the common
        // descendant, which starts with a_1 z.
        let via_zz = w([1, 2, 3, 1, 2, 3, 3, 1, 1]);
        assert_eq!(
            Some(&rules.normal_form(&via_zz)),
            report.common_descendant()
        );
        assert_eq!(
            report.common_descendant(),
            Some(&w([1, 1, 2, 3, 2, 3, 3, 1, 1]))
        );
    }

    #[test]
    fn disjoint_redexes_commute_in_one_step() {
        let rules = RuleSet::standard(3).unwrap();
        let left = Redex {
            kind: RedexKind::T(1),
            position: 0,
        };
        let right = Redex {
            kind: RedexKind::T(2),
            position: 4,
        };
        let ambient = w([2, 3, 1, 2, 3, 1, 2]);
        let inst = OverlapInstance::new(&rules, left, right, ambient).unwrap();
        assert_eq!(inst.placement(), Placement::Disjoint);
        let report = check_joinable(&rules, &inst).unwrap();
        assert!(report.joinable);
        let both_a = rules.apply(&report.left_result, right).unwrap();
        let both_b = rules.apply(&report.right_result, left).unwrap();
        assert_eq!(both_a, both_b);
    }

    #[test]
    fn invalid_instance_rejected() {
        let rules = RuleSet::standard(3).unwrap();
        let r = Redex {
            kind: RedexKind::T(1),
            position: 0,
        };
        assert!(OverlapInstance::new(&rules, r, r, w([2, 3, 1])).is_err());
        let bad = Redex {
            kind: RedexKind::T(2),
            position: 0,
        };
        assert!(OverlapInstance::new(&rules, r, bad, w([2, 3, 1])).is_err());
    }

    #[test]
    fn certifies_small_ranks() {
        for (n, max_m) in [(3, 4), (4, 3)] {
            let summary = certify_local_confluence(n, max_m).unwrap();
            assert!(summary.is_certified(), "{summary}");
            for class in [
                CaseClass::AlphaAlpha,
                CaseClass::AlphaBeta,
                CaseClass::AlphaGamma,
                CaseClass::BetaGamma,
                CaseClass::GammaGamma,
            ] {
                assert!(summary.per_case[&class].instances > 0, "{class} empty");
            }
        }
    }

    #[test]
    fn negative_control_is_flagged() {
        let summary = certify_rules(&RuleSet::with_r_n1(3).unwrap(), 2);
        assert!(!summary.is_certified());
        assert!(summary
            .malformed
            .iter()
            .any(|i| { [i.left.kind, i.right.kind].contains(&RedexKind::R { j: 3, m: 1 }) }));
    }

    #[test]
    fn joinability_stable_as_bound_grows() {
        let rules = RuleSet::standard(3).unwrap();
        let small = enumerate_overlaps_for(&rules, 2);
        let large = enumerate_overlaps_for(&rules, 4);
        for inst in &small {
            assert!(large.contains(inst));
            assert!(check_joinable(&rules, inst).unwrap().joinable);
        }
    }

    #[test]
    fn every_instance_overlaps_properly() {
        for inst in enumerate_overlaps(4, 3).unwrap() {
            assert_eq!(inst.placement(), Placement::Overlapping);
            assert!(inst.case_class().can_occur());
        }
    }

    #[test]
    fn small_max_m_rejected() {
        assert!(enumerate_overlaps(3, 1).is_err());
        assert!(certify_local_confluence(2, 3).is_err());
    }

    #[test]
    fn summary_serializes() {
        let s = certify_local_confluence(3, 2).unwrap();
        let json = serde_json::to_value(&s).unwrap();
        assert_eq!(json["beta_beta_empty"], true);
        assert!(
            json["per_case"]["alpha_alpha"]["instances"]
                .as_u64()
                .unwrap()
                > 0
        );
    }
}
