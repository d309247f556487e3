//! Batch commands behind the `incdep` binary. Each returns its output text
//! and exit status so it can be driven in-process.

use std::fmt::Write as _;

use rayon::prelude::*;

use crate::algorithms::{parse, ParseOutcome};
use crate::ambiguity::{search_all, search_first};
use crate::analysis::Analysis;
use crate::bench::{format_report, run_bench, BenchConfig, Method};
use crate::error::{Error, Result};
use crate::grammar::{check_grammar, RuleGrammar};
use crate::table::{render_tree, write_table};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Emit {
    Table,
    Tree,
    Both,
}

impl std::str::FromStr for Emit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(Emit::Table),
            "tree" => Ok(Emit::Tree),
            "both" => Ok(Emit::Both),
            other => Err(Error::Refused(format!("unknown emit mode '{}'", other))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub method: Method,
    /// Backtracking only: search the projective decision structure.
    pub projective: bool,
    pub emit: Emit,
    pub stats: bool,
    pub all_parses: bool,
}

impl RunConfig {
    pub fn new(method: Method) -> Self {
        RunConfig {
            method,
            projective: false,
            emit: Emit::Table,
            stats: false,
            all_parses: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.all_parses && self.method != Method::Backtrack {
            return Err(Error::Refused("--all-parses requires --algorithm backtrack".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutput {
    pub stdout: String,
    pub status: i32,
}

struct Block {
    text: String,
    ok: bool,
}

fn emit_analysis(out: &mut String, analysis: &Analysis, emit: Emit) {
    if matches!(emit, Emit::Table | Emit::Both) {
        out.push_str(&write_table(analysis));
    }
    if matches!(emit, Emit::Tree | Emit::Both) {
        match render_tree(analysis) {
            Ok(tree) => out.push_str(&tree),
            Err(e) => {
                let _ = writeln!(out, "# tree_error: {}", e);
            }
        }
    }
}

fn outcome_block(config: &RunConfig, outcome: &ParseOutcome, backtracks: Option<u64>) -> Block {
    let mut text = String::new();
    emit_analysis(&mut text, &outcome.analysis, config.emit);
    let _ = writeln!(text, "# unity: {}", outcome.unity);
    if config.stats {
        let _ = writeln!(text, "# permit_queries: {}", outcome.stats.permit_queries);
        let _ = writeln!(text, "# link_operations: {}", outcome.stats.link_operations);
        if let Some(b) = backtracks {
            let _ = writeln!(text, "# backtracks: {}", b);
        }
    }
    Block {
        text,
        ok: outcome.unity,
    }
}

fn parse_line(config: &RunConfig, grammar: &RuleGrammar, line: &str) -> Block {
    let sentence = match grammar.sentence(line.split_whitespace()) {
        Ok(s) => s,
        Err(e) => {
            return Block {
                text: format!("# error: {}\n", e),
                ok: false,
            }
        }
    };
    match config.method {
        Method::Deterministic(alg) => outcome_block(config, &parse(alg, grammar, &sentence), None),
        Method::Backtrack if !config.all_parses => {
            let report = search_first(grammar, &sentence, config.projective);
            outcome_block(config, &report.result, Some(report.stats.backtracks))
        }
        Method::Backtrack => {
            let report = search_all(grammar, &sentence, config.projective);
            let total = report.result.len();
            let mut parts = Vec::new();
            for (k, analysis) in report.result.analyses().enumerate() {
                let mut text = String::new();
                emit_analysis(&mut text, &analysis, config.emit);
                let _ = writeln!(text, "# analysis: {}/{}", k + 1, total);
                let _ = writeln!(text, "# unity: true");
                parts.push(text);
            }
            if parts.is_empty() {
                parts.push("# analyses: 0\n# unity: false\n".to_owned());
            }
            if config.stats {
                let last = parts.last_mut().expect("at least one block");
                let c = report.stats.counter;
                let _ = writeln!(last, "# permit_queries: {}", c.permit_queries);
                let _ = writeln!(last, "# link_operations: {}", c.link_operations);
                let _ = writeln!(last, "# backtracks: {}", report.stats.backtracks);
            }
            Block {
                text: parts.join("\n"),
                ok: total > 0,
            }
        }
    }
}

/// Parses one sentence per non-blank input line. Exit status is 0 iff
/// every sentence reached unity without errors.
pub fn cmd_parse(config: &RunConfig, grammar: &RuleGrammar, input: &str) -> Result<CommandOutput> {
    config.validate()?;
    let lines: Vec<&str> = input.lines().filter(|l| !l.trim().is_empty()).collect();
    let blocks: Vec<Block> = lines
        .par_iter()
        .map(|line| parse_line(config, grammar, line))
        .collect();
    let ok = blocks.iter().all(|b| b.ok);
    let texts: Vec<String> = blocks.into_iter().map(|b| b.text).collect();
    Ok(CommandOutput {
        stdout: texts.join("\n"),
        status: if ok { 0 } else { 1 },
    })
}

pub fn cmd_bench(config: &BenchConfig) -> Result<CommandOutput> {
    let rows = run_bench(config)?;
    Ok(CommandOutput {
        stdout: format_report(&rows),
        status: 0,
    })
}

/// Summarizes a grammar file. Exit status is 0 iff it has no errors.
pub fn cmd_check(text: &str) -> CommandOutput {
    let report = check_grammar(text);
    let mut out = String::new();
    let _ = writeln!(out, "{} forms", report.grammar.lexicon_size());
    let _ = writeln!(out, "{} categories", report.grammar.categories().len());
    let _ = writeln!(out, "{} rules", report.grammar.rules().len());
    for w in &report.warnings {
        let _ = writeln!(out, "warning: {}", w);
    }
    for e in &report.errors {
        let _ = writeln!(out, "error: {}", e);
    }
    let _ = writeln!(
        out,
        "{} errors, {} warnings",
        report.errors.len(),
        report.warnings.len()
    );
    CommandOutput {
        stdout: out,
        status: if report.is_ok() { 0 } else { 1 },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::Algorithm;
    use crate::grammar::load_grammar;

    const G1: &str = "word the : D\nword dog : N\nword barks : V\nrule N < D\nrule V < N\n";

    #[test]
    fn lsup_table() {
        let g = load_grammar(G1).unwrap();
        let out = cmd_parse(&RunConfig::new(Method::Deterministic(Algorithm::Lsup)), &g, "the dog barks\n").unwrap();
        assert_eq!(out.stdout, "1\tthe\tD\t2\n2\tdog\tN\t3\n3\tbarks\tV\t0\n# unity: true\n");
        assert_eq!(out.status, 0);
    }

    #[test]
    fn null_grammar_fails_unity() {
        let g = load_grammar("word a : A\nword b : B").unwrap();
        let out = cmd_parse(&RunConfig::new(Method::Deterministic(Algorithm::Esh)), &g, "a b").unwrap();
        assert_eq!(out.stdout, "1\ta\tA\t0\n2\tb\tB\t0\n# unity: false\n");
        assert_eq!(out.status, 1);
    }

    #[test]
    fn unknown_word_is_per_sentence() {
        let g = load_grammar(G1).unwrap();
        let out = cmd_parse(
            &RunConfig::new(Method::Deterministic(Algorithm::Lsu)),
            &g,
            "the cat barks\nthe dog barks\n",
        )
        .unwrap();
        assert!(out.stdout.starts_with("# error: unknown word 'cat' at position 2\n\n1\tthe"));
        assert_eq!(out.status, 1);
    }

    #[test]
    fn all_parses_requires_backtrack() {
        let mut config = RunConfig::new(Method::Deterministic(Algorithm::Lsu));
        config.all_parses = true;
        assert!(cmd_parse(&config, &RuleGrammar::null(), "").is_err());
    }

    #[test]
    fn tree_error_is_reported_inline() {
        let g = load_grammar("word x : X\nrule X ~ X").unwrap();
        let mut config = RunConfig::new(Method::Deterministic(Algorithm::Esh));
        config.emit = Emit::Tree;
        let out = cmd_parse(&config, &g, "x x").unwrap();
        assert_eq!(out.stdout, "# tree_error: cycle involving word 1\n# unity: false\n");
    }

    #[test]
    fn check_reports() {
        let out = cmd_check(G1);
        assert_eq!(out.stdout, "3 forms\n3 categories\n2 rules\n0 errors, 0 warnings\n");
        assert_eq!(out.status, 0);

        let out = cmd_check("word the : D\nword the : N\n");
        assert!(out.stdout.contains("error: line 2: duplicate form 'the'"));
        assert_eq!(out.status, 1);

        let out = cmd_check("word dog : N\nrule V < N\n");
        assert!(out.stdout.contains("warning: line 2: category 'V'"));
        assert_eq!(out.status, 0);
    }
}
