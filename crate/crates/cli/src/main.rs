//! `permrel`: batch queries on monoids with permutation relations.
//!
//! Exit codes: 0 success, 1 failed check or counterexample, 2 usage or
//! parse error, 3 budget refusal.

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use permrel_core::acceptance::{run_all, run_criterion, AcceptanceConfig};
use permrel_core::explorer::{
    build_table, cancellation_failures, commutes_after_z, growth, rho_related, stabilizer_reduction,
};
use permrel_core::{
    certify_rules, parse_permutation, parse_word, phi, series_report, Budget, CyclicMonoid,
    Element, Error, Permutation, PermutationSet, Presentation, RuleSet, Word,
};

#[derive(Parser, Debug)]
#[command(
    name = "permrel",
    version,
    about = "Monoids defined by permutation relations"
)]
struct Cli {
    /// Number of generators.
    #[arg(short = 'n', long = "rank", global = true, default_value_t = 3)]
    n: usize,
    /// Permutation set: cyclic, sym, trivial, a `;`-separated generator
    /// list closed to a group, or `set:` followed by an explicit list.
    #[arg(long = "h", global = true, default_value = "cyclic")]
    h: String,
    /// Largest number of words a congruence table may enumerate.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT.0)]
    budget: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = AcceptanceConfig::default().seed)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form, decomposition and membership in P (cyclic H only).
    Nf { word: String },
    /// Whether two words are equal in the monoid (cyclic H only).
    Eq { u: String, v: String },
    /// Normal form of a product (cyclic H only).
    Mul { u: String, v: String },
    /// Image of a word in the group of fractions.
    Phi { word: String },
    /// Number of elements of each length, by congruence closure.
    Growth {
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Normal-form counts, forbidden-factor counts and explorer counts side by side.
    Series {
        #[arg(long, default_value_t = 7)]
        max_len: usize,
        #[arg(long)]
        csv: bool,
    },
    /// Bounded critical-pair check of the rewriting system.
    Confluence {
        #[arg(long, default_value_t = 4)]
        max_m: usize,
        /// Add the rule R(n, 1), which breaks the system.
        #[arg(long)]
        with_r_n1: bool,
    },
    /// Congruence classes of the words of one length.
    Explore {
        /// Word length; with `--cancel`, the exclusive length bound.
        #[arg(long = "max-len", default_value_t = 4)]
        len: usize,
        /// Print every word with its class representative.
        #[arg(long)]
        csv: bool,
        /// Search for cancellation failures below this length.
        #[arg(long)]
        cancel: bool,
    },
    /// Whether `z a_i a_j = z a_j a_i`.
    Zcommute { i: usize, j: usize },
    /// Bounded search for `s z^k = t z^k`.
    Rho {
        s: String,
        t: String,
        #[arg(long, default_value_t = 3)]
        max_power: usize,
    },
    /// Reduction of the group to a presentation indexed by the stabilizer of 1.
    Reduce,
    /// Run the acceptance checks.
    Accept {
        /// Run a single criterion.
        #[arg(long)]
        only: Option<u8>,
    },
}

enum Failure {
    Check(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<String, Failure>;

fn parse_h(spec: &str, n: usize) -> Result<PermutationSet, Error> {
    match spec.trim() {
        "cyclic" => Ok(PermutationSet::cyclic(n)),
        "sym" => Ok(PermutationSet::symmetric(n)),
        "trivial" => Ok(PermutationSet::trivial(n)),
        other => {
            let (explicit, list) = match other.strip_prefix("set:") {
                Some(rest) => (true, rest),
                None => (false, other),
            };
            let perms = list
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|s| parse_permutation(s, n))
                .collect::<Result<Vec<Permutation>, Error>>()?;
            if explicit {
                PermutationSet::from_members(n, perms)
            } else {
                permrel_core::close_under_group(n, &perms)
            }
        }
    }
}

fn cyclic_monoid(cli: &Cli) -> Result<CyclicMonoid, Error> {
    let h = parse_h(&cli.h, cli.n)?;
    if !h.is_cyclic_group() {
        return Err(Error::UnsupportedPresentation(format!(
            "rewriting needs H = <(1 2 ... {})>, got {} permutations from {:?}",
            cli.n,
            h.len(),
            cli.h
        )));
    }
    CyclicMonoid::new(cli.n)
}

fn presentation(cli: &Cli) -> Result<Presentation, Error> {
    Presentation::new(parse_h(&cli.h, cli.n)?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn describe(m: &CyclicMonoid, w: &Word, json: bool) -> String {
    let nf = m.normal_form(w);
    let parts = m.decompose(&nf).expect("normal forms are irreducible");
    let in_p = parts.eps == 1;
    if json {
        json!({"normal_form": nf, "decomposition": parts, "in_p": in_p}).to_string()
    } else {
        format!("{nf} ∣ {parts} ∣ in P: {}", yes_no(in_p))
    }
}

fn run(cli: &Cli) -> Outcome {
    let n = cli.n;
    let budget = Budget(cli.budget);
    match &cli.command {
        Command::Nf { word } => {
            let m = cyclic_monoid(cli)?;
            Ok(describe(&m, &parse_word(word, n)?, cli.json))
        }
        Command::Eq { u, v } => {
            let m = cyclic_monoid(cli)?;
            let equal = m.equal(&parse_word(u, n)?, &parse_word(v, n)?);
            Ok(if cli.json {
                json!({ "equal": equal }).to_string()
            } else if equal {
                "equal".into()
            } else {
                "not equal".into()
            })
        }
        Command::Mul { u, v } => {
            let m = cyclic_monoid(cli)?;
            let product = parse_word(u, n)?.concat(&parse_word(v, n)?);
            Ok(describe(&m, &product, cli.json))
        }
        Command::Phi { word } => {
            cyclic_monoid(cli)?;
            let g: Element = phi(n, &parse_word(word, n)?);
            Ok(if cli.json {
                g.to_json().to_string()
            } else {
                g.to_string()
            })
        }
        Command::Growth { max_len } => {
            let counts = growth(&presentation(cli)?, *max_len, budget)?;
            Ok(if cli.json {
                json!({ "n": n, "growth": counts }).to_string()
            } else {
                counts
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            })
        }
        Command::Series { max_len, csv } => {
            let report = series_report(n, *max_len, budget)?;
            let text = if cli.json {
                serde_json::to_string(&report).expect("report serializes")
            } else if *csv {
                report.to_csv().trim_end().to_string()
            } else {
                report.to_string().trim_end().to_string()
            };
            if report.all_agree() {
                Ok(text)
            } else {
                Err(Failure::Check(text))
            }
        }
        Command::Confluence { max_m, with_r_n1 } => {
            if *max_m < 2 {
                return Err(Error::Precondition(format!("max_m must be >= 2, got {max_m}")).into());
            }
            let rules = if *with_r_n1 {
                RuleSet::with_r_n1(n)?
            } else {
                RuleSet::standard(n)?
            };
            let summary = certify_rules(&rules, *max_m);
            let text = if cli.json {
                serde_json::to_string(&summary).expect("summary serializes")
            } else {
                summary.to_string()
            };
            if summary.is_certified() {
                Ok(text)
            } else {
                Err(Failure::Check(text))
            }
        }
        Command::Explore { len, csv, cancel } => {
            let p = presentation(cli)?;
            if *cancel {
                let failures = cancellation_failures(&p, *len, budget)?;
                let text = if cli.json {
                    serde_json::to_string(&failures).expect("failures serialize")
                } else if failures.is_empty() {
                    format!("no cancellation failures below length {len}")
                } else {
                    failures
                        .iter()
                        .map(|f| format!("{:?} by a_{}: [{}] vs [{}]", f.side, f.letter, f.u, f.v))
                        .collect::<Vec<_>>()
                        .join("\n")
                };
                return Ok(text);
            }
            let table = build_table(&p, *len, budget)?;
            Ok(if *csv {
                table.to_csv().trim_end().to_string()
            } else if cli.json {
                json!({
                    "n": n,
                    "length": len,
                    "words": table.word_count(),
                    "classes": table.class_count(),
                    "singletons": table.singleton_count(),
                })
                .to_string()
            } else {
                format!(
                    "length {len}: {} words, {} classes, {} singletons",
                    table.word_count(),
                    table.class_count(),
                    table.singleton_count()
                )
            })
        }
        Command::Zcommute { i, j } => {
            let holds = commutes_after_z(&presentation(cli)?, *i, *j, budget)?;
            Ok(if cli.json {
                json!({ "i": i, "j": j, "commutes": holds }).to_string()
            } else {
                format!(
                    "z a_{i} a_{j} {} z a_{j} a_{i}",
                    if holds { "=" } else { "≠" }
                )
            })
        }
        Command::Rho { s, t, max_power } => {
            let verdict = rho_related(
                &presentation(cli)?,
                &parse_word(s, n)?,
                &parse_word(t, n)?,
                *max_power,
                budget,
            )?;
            Ok(if cli.json {
                serde_json::to_string(&verdict).expect("verdict serializes")
            } else {
                match verdict {
                    permrel_core::RhoVerdict::Related { power } => {
                        format!("related at z^{power}")
                    }
                    permrel_core::RhoVerdict::Unknown => {
                        format!("unknown up to z^{max_power}")
                    }
                }
            })
        }
        Command::Reduce => {
            let red = stabilizer_reduction(&parse_h(&cli.h, n)?)?;
            let relations: Vec<String> = red
                .induced_relations()
                .iter()
                .map(|(l, r)| format!("{l} = {r}"))
                .collect();
            Ok(if cli.json {
                json!({
                    "h1_order": red.h1().len(),
                    "induced_relations": relations,
                })
                .to_string()
            } else {
                let mut text = format!(
                    "H1 order {}; induced relations: {} (deduplicated)",
                    red.h1().len(),
                    relations.len()
                );
                for r in &relations {
                    text.push_str("\n  ");
                    text.push_str(r);
                }
                text
            })
        }
        Command::Accept { only } => {
            let cfg = AcceptanceConfig {
                seed: cli.seed,
                budget,
            };
            let outcomes = match only {
                Some(id) if (1..=10).contains(id) => vec![run_criterion(*id, &cfg)],
                Some(id) => {
                    return Err(Error::Precondition(format!("no criterion {id}")).into());
                }
                None => run_all(&cfg),
            };
            for o in &outcomes {
                eprintln!("criterion {} took {:.2?}", o.id, o.elapsed);
            }
            let text = if cli.json {
                serde_json::to_string(&outcomes).expect("outcomes serialize")
            } else {
                outcomes
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            if outcomes.iter().all(|o| o.passed) {
                Ok(text)
            } else {
                Err(Failure::Check(text))
            }
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => 3,
        Error::NotCentral { .. } => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check(text)) => {
            println!("{text}");
            ExitCode::from(1)
        }
        Err(Failure::Core(e)) => {
            if cli.json {
                println!("{}", json!({ "error": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
