//! The ten acceptance checks, each returning a pass/fail line.
//!
//! Randomized checks draw from a ChaCha stream seeded by
//! [`AcceptanceConfig::seed`], so repeated runs are identical.

use std::collections::HashSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::confluence::{certify_local_confluence, certify_rules};
use crate::error::Result;
use crate::explorer::{
    build_table, check_sym_identity, commutes_after_z, growth, rho_growth, stabilizer_reduction,
    Budget, CongruenceTable,
};
use crate::fractions::{phi, GroupElement};
use crate::oracle::{binomial, constrained_parses, count_avoiding_brute, ideal_classes};
use crate::perm::PermutationSet;
use crate::presentation::Presentation;
use crate::rewrite::{CyclicMonoid, RuleSet};
use crate::series::{count_avoiding, count_normal_forms, series_report};
use crate::word::Word;

/// Random rewrite orders tried per word.
pub const RANDOM_ORDERS: usize = 20;
/// Random triples in the cancellation check.
pub const CANCELLATION_TRIPLES: usize = 10_000;
/// Wall-clock limit for one full run.
pub const TIME_LIMIT: Duration = Duration::from_secs(600);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AcceptanceConfig {
    pub seed: u64,
    pub budget: Budget,
}

impl Default for AcceptanceConfig {
    fn default() -> Self {
        AcceptanceConfig {
            seed: 20_240_601,
            budget: Budget::DEFAULT,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail
        )
    }
}

pub const NAMES: [&str; 10] = [
    "normal form independent of rewrite order",
    "rewriting agrees with congruence closure",
    "embedding into the group of fractions",
    "local confluence",
    "normal-form grammar",
    "centrality and the ideal P",
    "identities for the full symmetric group",
    "forbidden-factor counts",
    "stabilizer reduction",
    "reproducibility",
];

/// Runs one criterion. Internal errors become a failing outcome.
pub fn run_criterion(id: u8, cfg: &AcceptanceConfig) -> CriterionOutcome {
    let start = Instant::now();
    let result = match id {
        1 => criterion_1(cfg),
        2 => criterion_2(cfg),
        3 => criterion_3(cfg),
        4 => criterion_4(cfg),
        5 => criterion_5(cfg),
        6 => criterion_6(cfg),
        7 => criterion_7(cfg),
        8 => criterion_8(cfg),
        9 => criterion_9(cfg),
        10 => criterion_10(cfg),
        _ => Ok((false, format!("no criterion {id}"))),
    };
    let (passed, detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionOutcome {
        id,
        name: NAMES.get(id as usize - 1).copied().unwrap_or("unknown"),
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

/// Criteria 1 to 9, then criterion 10 which reruns them and compares.
pub fn run_all(cfg: &AcceptanceConfig) -> Vec<CriterionOutcome> {
    let start = Instant::now();
    let mut outcomes: Vec<CriterionOutcome> = (1..=9).map(|id| run_criterion(id, cfg)).collect();
    let first_run = start.elapsed();
    let again: Vec<CriterionOutcome> = (1..=9).map(|id| run_criterion(id, cfg)).collect();
    let (passed, detail) = compare_runs(&outcomes, &again, first_run);
    outcomes.push(CriterionOutcome {
        id: 10,
        name: NAMES[9],
        passed,
        detail,
        elapsed: start.elapsed(),
    });
    outcomes
}

type Check = Result<(bool, String)>;

fn criterion_1(cfg: &AcceptanceConfig) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut parts = Vec::new();
    let mut ok = true;
    for (n, max_len) in [(3, 7), (4, 6)] {
        let rules = RuleSet::standard(n)?;
        let (mut words, mut mismatches) = (0usize, 0usize);
        for w in Word::all_up_to(n, max_len) {
            let nf = rules.normal_form(&w);
            for _ in 0..RANDOM_ORDERS {
                if rules.reduce_randomly(&w, &mut rng).0 != nf {
                    mismatches += 1;
                }
            }
            words += 1;
        }
        ok &= mismatches == 0;
        parts.push(format!(
            "n={n} ℓ≤{max_len}: {words} words x {RANDOM_ORDERS} orders, {mismatches} mismatches"
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn criterion_2(cfg: &AcceptanceConfig) -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for (n, max_len) in [(3, 7), (4, 6)] {
        let monoid = CyclicMonoid::new(n)?;
        let predicted: Vec<u64> = count_normal_forms(n, max_len)?;
        let p = Presentation::cyclic(n)?;
        let mut classes = Vec::new();
        let mut wrong_reps = 0usize;
        for len in 0..=max_len {
            let table = build_table(&p, len, cfg.budget)?;
            classes.push(table.class_count() as u64);
            for w in Word::all_of_length(n, len) {
                if table.representative(&w)? != monoid.normal_form(&w) {
                    wrong_reps += 1;
                }
            }
        }
        ok &= classes == predicted && wrong_reps == 0;
        parts.push(format!(
            "n={n}: classes {classes:?}, predicted {predicted:?}, {wrong_reps} representative mismatches"
        ));
    }
    let n3: Vec<u64> = count_normal_forms(3, 3)?;
    ok &= n3 == [1, 3, 9, 25];
    Ok((ok, parts.join("; ")))
}

fn criterion_3(cfg: &AcceptanceConfig) -> Check {
    let n = 3;
    let monoid = CyclicMonoid::new(n)?;
    let (mut pairs, mut equal_pairs, mut violations) = (0usize, 0usize, 0usize);
    for len in 0..=5 {
        let words: Vec<Word> = Word::all_of_length(n, len).collect();
        let nfs: Vec<Word> = words.iter().map(|w| monoid.normal_form(w)).collect();
        let images: Vec<GroupElement> = words.iter().map(|w| phi(n, w)).collect();
        for a in 0..words.len() {
            for b in 0..words.len() {
                let by_rewriting = nfs[a] == nfs[b];
                let by_group = images[a] == images[b];
                pairs += 1;
                equal_pairs += by_rewriting as usize;
                violations += (by_rewriting != by_group) as usize;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x3);
    let random_word = |rng: &mut ChaCha8Rng, len: usize| -> Word {
        Word::from(
            (0..len)
                .map(|_| rng.random_range(1..=n as u8))
                .collect::<Vec<_>>(),
        )
    };
    let (mut hypotheses, mut cancel_violations) = (0usize, 0usize);
    for _ in 0..CANCELLATION_TRIPLES {
        let len = rng.random_range(1..=3);
        let u = random_word(&mut rng, len);
        let v = random_word(&mut rng, len);
        let wlen = rng.random_range(0..=3);
        let w = random_word(&mut rng, wlen);
        let same = monoid.equal(&u, &v);
        for (x, y) in [(u.concat(&w), v.concat(&w)), (w.concat(&u), w.concat(&v))] {
            if monoid.equal(&x, &y) {
                hypotheses += 1;
                cancel_violations += (!same) as usize;
            }
        }
    }
    Ok((
        violations == 0 && cancel_violations == 0,
        format!(
            "n=3 ℓ≤5: {pairs} pairs ({equal_pairs} equal), {violations} disagreements; \
             {CANCELLATION_TRIPLES} random triples, {hypotheses} cancellation hypotheses held, \
             {cancel_violations} violations"
        ),
    ))
}

fn criterion_4(_cfg: &AcceptanceConfig) -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 3..=5 {
        let summary = certify_local_confluence(n, 5)?;
        let control = certify_rules(&RuleSet::with_r_n1(n)?, 5);
        ok &= summary.is_certified() && summary.beta_beta_empty && !control.is_certified();
        parts.push(format!(
            "n={n}: {} overlaps, {} not joinable, β-β {}; with R({n},1): {} nested, {} not joinable",
            summary.total_instances(),
            summary.non_joinable.len(),
            if summary.beta_beta_empty { "empty" } else { "FOUND" },
            control.malformed.len(),
            control.non_joinable.len()
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn criterion_5(_cfg: &AcceptanceConfig) -> Check {
    let n = 3;
    let monoid = CyclicMonoid::new(n)?;
    let (mut irreducible, mut bad) = (0usize, 0usize);
    for w in Word::all_up_to(n, 7) {
        if !monoid.rules().is_irreducible(&w) {
            continue;
        }
        irreducible += 1;
        let parses = constrained_parses(n, &w);
        let decomposed = monoid.decompose(&w)?;
        if parses.len() != 1 || parses[0] != decomposed || decomposed.to_word(n) != w {
            bad += 1;
        }
    }
    Ok((
        bad == 0,
        format!("n=3 ℓ≤7: {irreducible} irreducible words, {bad} without exactly one parse"),
    ))
}

fn criterion_6(cfg: &AcceptanceConfig) -> Check {
    let n = 3;
    let monoid = CyclicMonoid::new(n)?;
    let z = monoid.z();
    let not_central = Word::all_up_to(n, 5)
        .filter(|w| !monoid.equal(&z.concat(w), &w.concat(&z)))
        .count();

    let p = Presentation::cyclic(n)?;
    let tables: Vec<CongruenceTable> = (0..=8)
        .map(|len| build_table(&p, len, cfg.budget))
        .collect::<Result<_>>()?;
    let ideals: Vec<HashSet<Word>> = tables.iter().map(ideal_classes).collect::<Result<_>>()?;
    let in_ideal = |w: &Word| -> Result<bool> {
        Ok(ideals[w.len()].contains(&tables[w.len()].representative(w)?))
    };

    let mut p_mismatches = 0usize;
    for w in Word::all_up_to(n, 7) {
        if monoid.is_in_p(&w) != in_ideal(&w)? {
            p_mismatches += 1;
        }
    }

    let outside: Vec<Word> = Word::all_up_to(n, 3)
        .filter(|w| !monoid.is_in_p(w))
        .collect();
    let (mut pairs, mut witness_failures) = (0usize, 0usize);
    for a in &outside {
        for b in &outside {
            pairs += 1;
            let ok = match monoid.prime_witness(a, b) {
                Ok(i) => {
                    let square = Word::from(vec![i as u8, i as u8]);
                    !in_ideal(&a.concat(&square).concat(b))?
                }
                Err(_) => false,
            };
            witness_failures += (!ok) as usize;
        }
    }
    Ok((
        not_central == 0 && p_mismatches == 0 && witness_failures == 0,
        format!(
            "n=3: {not_central} words ℓ≤5 with z w ≠ w z; {p_mismatches} P-membership \
             disagreements at ℓ≤7; {pairs} pairs outside P with ℓ≤3, {witness_failures} without witness"
        ),
    ))
}

fn criterion_7(cfg: &AcceptanceConfig) -> Check {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 3..=4 {
        let mut holding = 0;
        let mut total = 0;
        for i in 1..=n {
            for j in i + 1..=n {
                total += 1;
                holding += check_sym_identity(n, i, j, cfg.budget)? as usize;
            }
        }
        ok &= holding == total;
        parts.push(format!("Sym_{n}: {holding}/{total} pairs"));
    }
    let cyclic = commutes_after_z(&Presentation::cyclic(3)?, 1, 2, cfg.budget)?;
    ok &= !cyclic;
    parts.push(format!("cyclic n=3 (1,2): {cyclic}"));
    Ok((ok, parts.join("; ")))
}

fn criterion_8(cfg: &AcceptanceConfig) -> Check {
    let n = 3;
    let avoiding: Vec<u64> = count_avoiding(n, 7)?;
    let p = Presentation::cyclic(n)?;
    let mut singletons = Vec::new();
    let mut brute = Vec::new();
    for len in 0..=7 {
        singletons.push(build_table(&p, len, cfg.budget)?.singleton_count() as u64);
        brute.push(count_avoiding_brute(n, len) as u64);
    }
    let report3 = series_report(3, 7, cfg.budget)?;
    let report4 = series_report(4, 6, cfg.budget)?;
    let ok = avoiding[..4] == [1, 3, 9, 24]
        && avoiding == singletons
        && avoiding == brute
        && report3.all_agree()
        && report4.all_agree();
    Ok((
        ok,
        format!(
            "n=3 avoiding {avoiding:?}, singletons {singletons:?}, enumeration {brute:?}; \
             series agreement n=3 ℓ≤7 {}, n=4 ℓ≤6 {}",
            report3.all_agree(),
            report4.all_agree()
        ),
    ))
}

fn criterion_9(cfg: &AcceptanceConfig) -> Check {
    const MAX_LEN: usize = 5;
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 3..=4 {
        let free = stabilizer_reduction(&PermutationSet::cyclic(n))?;
        let free_growth = growth(&free.induced_presentation()?, MAX_LEN, cfg.budget)?;
        let expected_free: Vec<usize> = (0..=MAX_LEN).map(|l| (n - 1).pow(l as u32)).collect();
        let free_ok = free.induced_relations().is_empty()
            && free.h1().len() == 1
            && free_growth == expected_free;

        let sym = stabilizer_reduction(&PermutationSet::symmetric(n))?;
        let factorial: usize = (1..n).product();
        let induced = sym.induced_presentation()?;
        let plain = growth(&induced, MAX_LEN, cfg.budget)?;
        let cancellative = rho_growth(&induced, MAX_LEN, 1, cfg.budget)?;
        let commutative: Vec<usize> = (0..=MAX_LEN as u64)
            .map(|l| binomial(l + n as u64 - 2, n as u64 - 2) as usize)
            .collect();
        let sym_ok = sym.h1().len() == factorial && cancellative == commutative;
        ok &= free_ok && sym_ok;
        parts.push(format!(
            "n={n}: cyclic |H1|={} relations={} growth {free_growth:?}; \
             Sym |H1|={} relations={} cancellative growth {cancellative:?} \
             (expected {commutative:?}), monoid growth {plain:?}",
            free.h1().len(),
            free.induced_relations().len(),
            sym.h1().len(),
            sym.induced_relations().len()
        ));
    }
    Ok((ok, parts.join("; ")))
}

fn criterion_10(cfg: &AcceptanceConfig) -> Check {
    let start = Instant::now();
    let first: Vec<CriterionOutcome> = (1..=9).map(|id| run_criterion(id, cfg)).collect();
    let first_run = start.elapsed();
    let second: Vec<CriterionOutcome> = (1..=9).map(|id| run_criterion(id, cfg)).collect();
    Ok(compare_runs(&first, &second, first_run))
}

fn compare_runs(
    first: &[CriterionOutcome],
    second: &[CriterionOutcome],
    first_run: Duration,
) -> (bool, String) {
    let differing: Vec<u8> = first
        .iter()
        .zip(second)
        .filter(|(a, b)| a.passed != b.passed || a.detail != b.detail)
        .map(|(a, _)| a.id)
        .collect();
    let in_time = first_run < TIME_LIMIT;
    (
        differing.is_empty() && in_time,
        format!(
            "two runs identical: {}; first run {} the {} s limit",
            if differing.is_empty() {
                "yes".to_string()
            } else {
                format!("no (criteria {differing:?})")
            },
            if in_time { "within" } else { "over" },
            TIME_LIMIT.as_secs()
        ),
    )
}
