//! Operation-count sweeps over synthetic workloads.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algorithms::{parse, Algorithm};
use crate::ambiguity::{search_first, worst_case_chain};
use crate::analysis::{Link, Sentence};
use crate::error::{Error, Result};
use crate::grammar::{Grammar, QueryCounter, RuleGrammar, TreeBackedGrammar};

/// Largest sentence the backtracking search is run on in a sweep.
pub const BACKTRACK_CAP: usize = 256;

/// A deterministic parser, or the first-answer backtracking search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Deterministic(Algorithm),
    Backtrack,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Deterministic(a) => a.fmt(f),
            Method::Backtrack => f.write_str("backtrack"),
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("backtrack") {
            Ok(Method::Backtrack)
        } else {
            s.parse().map(Method::Deterministic)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    NullGrammar,
    WorstCaseChain,
    RandomTree,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::NullGrammar => "null-grammar",
            Scenario::WorstCaseChain => "worst-case-chain",
            Scenario::RandomTree => "random-tree",
        }
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Scenario::NullGrammar, Scenario::WorstCaseChain, Scenario::RandomTree]
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| Error::Refused(format!("unknown scenario '{}'", s)))
    }
}

/// A random single-rooted tree over words `1..=n`: nodes are visited in a
/// random order and each picks a random earlier-visited node as its head.
pub fn random_tree<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Link> {
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    (1..n)
        .map(|k| Link::new(order[rng.gen_range(0..k)], order[k]))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub method: Method,
    pub n: usize,
    pub stats: QueryCounter,
    pub wall_ns: u128,
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub methods: Vec<Method>,
    pub scenario: Scenario,
    pub n_values: Vec<usize>,
    pub seed: u64,
    /// Backtracking search structure.
    pub projective: bool,
}

fn workload(scenario: Scenario, n: usize, seed: u64) -> Result<(Box<dyn Grammar + Sync>, Sentence)> {
    Ok(match scenario {
        Scenario::NullGrammar => (Box::new(RuleGrammar::null()), Sentence::synthetic(n, "X")),
        Scenario::WorstCaseChain => {
            let (g, s) = worst_case_chain(n)?;
            (Box::new(g), s)
        }
        Scenario::RandomTree => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(n as u64));
            let tree = random_tree(n, &mut rng);
            (Box::new(TreeBackedGrammar::new(tree)), Sentence::synthetic(n, "X"))
        }
    })
}

/// Runs every (method, n) pair, method-major.
pub fn run_bench(config: &BenchConfig) -> Result<Vec<BenchRow>> {
    if config.n_values.contains(&0) {
        return Err(Error::Refused("sentence lengths must be positive".into()));
    }
    let mut rows = Vec::new();
    for &method in &config.methods {
        for &n in &config.n_values {
            if method == Method::Backtrack && n > BACKTRACK_CAP {
                return Err(Error::Refused(format!(
                    "backtracking sweep refused for n = {} (cap {})",
                    n, BACKTRACK_CAP
                )));
            }
            let (grammar, sentence) = workload(config.scenario, n, config.seed)?;
            let start = Instant::now();
            let stats = match method {
                Method::Deterministic(alg) => parse(alg, grammar.as_ref(), &sentence).stats,
                Method::Backtrack => search_first(grammar.as_ref(), &sentence, config.projective).stats.counter,
            };
            rows.push(BenchRow {
                method,
                n,
                stats,
                wall_ns: start.elapsed().as_nanos(),
            });
        }
    }
    Ok(rows)
}

pub const BENCH_HEADER: &str = "algorithm\tn\tpermit_queries\tlink_operations\twall_ns";

pub fn format_report(rows: &[BenchRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", BENCH_HEADER);
    for row in rows {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            row.method, row.n, row.stats.permit_queries, row.stats.link_operations, row.wall_ns
        );
    }
    out
}
