//! Link-permission grammars.
//!
//! A [`Grammar`] answers one question in constant time: may this word be
//! the head of that word? Parsers never ask about a word and itself.
//!
//! Grammar files are line based:
//!
//! ```text
//! # comment
//! word dog : N
//! word barks : V
//! rule V < N     # N may precede its head V
//! rule V > N     # N may follow its head V
//! rule V ~ N     # either side
//! ```

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use crate::analysis::{Category, Link, Sentence, Word};
use crate::error::{Error, Result};

/// Constant-time link permission oracle.
pub trait Grammar {
    /// May `head` be the head of `dependent`?
    fn permits(&self, head: &Word, dependent: &Word) -> bool;
}

impl<G: Grammar + ?Sized> Grammar for &G {
    fn permits(&self, head: &Word, dependent: &Word) -> bool {
        (**self).permits(head, dependent)
    }
}

/// Which side of its head a dependent may occur on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// Dependent precedes the head.
    Pre,
    /// Dependent follows the head.
    Post,
    Either,
}

impl Direction {
    fn symbol(self) -> char {
        match self {
            Direction::Pre => '<',
            Direction::Post => '>',
            Direction::Either => '~',
        }
    }

    fn allows_pre(self) -> bool {
        matches!(self, Direction::Pre | Direction::Either)
    }

    fn allows_post(self) -> bool {
        matches!(self, Direction::Post | Direction::Either)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkRule {
    pub head: Category,
    pub dependent: Category,
    pub direction: Direction,
}

impl LinkRule {
    pub fn new(head: impl Into<Category>, direction: Direction, dependent: impl Into<Category>) -> Self {
        LinkRule {
            head: head.into(),
            dependent: dependent.into(),
            direction,
        }
    }
}

impl fmt::Display for LinkRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {} {} {}", self.head, self.direction.symbol(), self.dependent)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Sides {
    pre: bool,
    post: bool,
}

/// A lexicon plus a table of category-pair rules.
#[derive(Debug, Clone, Default)]
pub struct RuleGrammar {
    lexicon: HashMap<String, Category>,
    rules: Vec<LinkRule>,
    table: HashMap<Category, HashMap<Category, Sides>>,
}

impl RuleGrammar {
    /// The grammar that permits nothing.
    pub fn null() -> Self {
        RuleGrammar::default()
    }

    /// Builds a grammar directly. Later lexicon entries for the same form
    /// are rejected.
    pub fn new<F, C>(
        lexicon: impl IntoIterator<Item = (F, C)>,
        rules: impl IntoIterator<Item = LinkRule>,
    ) -> Result<Self>
    where
        F: Into<String>,
        C: Into<Category>,
    {
        let mut grammar = RuleGrammar::default();
        for (form, category) in lexicon {
            let form = form.into();
            if grammar.lexicon.contains_key(&form) {
                return Err(Error::DuplicateForm(form));
            }
            grammar.lexicon.insert(form, category.into());
        }
        for rule in rules {
            grammar.add_rule(rule);
        }
        Ok(grammar)
    }

    fn add_rule(&mut self, rule: LinkRule) {
        let sides = self
            .table
            .entry(rule.head.clone())
            .or_default()
            .entry(rule.dependent.clone())
            .or_default();
        sides.pre |= rule.direction.allows_pre();
        sides.post |= rule.direction.allows_post();
        self.rules.push(rule);
    }

    pub fn lexicon_size(&self) -> usize {
        self.lexicon.len()
    }

    pub fn rules(&self) -> &[LinkRule] {
        &self.rules
    }

    /// Distinct categories used in the lexicon.
    pub fn categories(&self) -> BTreeSet<&Category> {
        self.lexicon.values().collect()
    }

    pub fn category_of(&self, form: &str) -> Option<&Category> {
        self.lexicon.get(form)
    }

    /// Looks every token up in the lexicon.
    pub fn sentence<'a>(&self, tokens: impl IntoIterator<Item = &'a str>) -> Result<Sentence> {
        let mut words = Vec::new();
        for (k, form) in tokens.into_iter().enumerate() {
            let category = self.lexicon.get(form).ok_or_else(|| Error::UnknownWord {
                form: form.to_owned(),
                index: k + 1,
            })?;
            words.push((form.to_owned(), category.clone()));
        }
        Sentence::new(words)
    }
}

impl Grammar for RuleGrammar {
    fn permits(&self, head: &Word, dependent: &Word) -> bool {
        if head.index() == dependent.index() {
            return false;
        }
        match self
            .table
            .get(head.category())
            .and_then(|row| row.get(dependent.category()))
        {
            Some(sides) if dependent.index() < head.index() => sides.pre,
            Some(sides) => sides.post,
            None => false,
        }
    }
}

/// Permits exactly the links of a fixed target structure.
#[derive(Debug, Clone, Default)]
pub struct TreeBackedGrammar {
    target: HashSet<Link>,
}

impl TreeBackedGrammar {
    pub fn new<L: Into<Link>>(target: impl IntoIterator<Item = L>) -> Self {
        TreeBackedGrammar {
            target: target.into_iter().map(Into::into).collect(),
        }
    }

    pub fn target(&self) -> &HashSet<Link> {
        &self.target
    }
}

impl Grammar for TreeBackedGrammar {
    fn permits(&self, head: &Word, dependent: &Word) -> bool {
        self.target
            .contains(&Link::new(head.index(), dependent.index()))
    }
}

/// Per-run instrumentation: grammar queries and link creations.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryCounter {
    pub permit_queries: u64,
    /// Links created, including ones later undone by backtracking.
    pub link_operations: u64,
}

impl QueryCounter {
    pub fn new() -> Self {
        QueryCounter::default()
    }

    pub fn reset(&mut self) {
        *self = QueryCounter::default();
    }

    /// Asks the grammar and counts the query.
    pub fn permits<G: Grammar + ?Sized>(&mut self, grammar: &G, head: &Word, dependent: &Word) -> bool {
        self.permit_queries += 1;
        grammar.permits(head, dependent)
    }

    pub fn record_link(&mut self) {
        self.link_operations += 1;
    }
}

/// A non-fatal finding from reading a grammar file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

/// Everything learned from reading a grammar file: the grammar built from
/// the well-formed lines, plus every error and warning.
#[derive(Debug, Clone)]
pub struct GrammarReport {
    pub grammar: RuleGrammar,
    pub errors: Vec<Error>,
    pub warnings: Vec<Diagnostic>,
}

impl GrammarReport {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Reads a grammar file, failing on the first format error.
pub fn load_grammar(text: &str) -> Result<RuleGrammar> {
    let mut report = check_grammar(text);
    if report.errors.is_empty() {
        Ok(report.grammar)
    } else {
        Err(report.errors.swap_remove(0))
    }
}

/// Reads a grammar file, collecting all errors and warnings.
pub fn check_grammar(text: &str) -> GrammarReport {
    let mut grammar = RuleGrammar::default();
    let mut errors = Vec::new();
    let mut warnings = Vec::new();
    let mut form_lines: HashMap<String, usize> = HashMap::new();
    let mut seen_rules: HashMap<LinkRule, usize> = HashMap::new();
    let mut rule_lines = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let (directive, rest) = match content.find(char::is_whitespace) {
            Some(at) => (&content[..at], content[at..].trim()),
            None => (content, ""),
        };
        let fail = |message: String| Error::Format { line, message };
        match directive {
            "word" => match parse_word(rest) {
                Ok((form, category)) => {
                    if let Some(first) = form_lines.get(form) {
                        errors.push(fail(format!(
                            "duplicate form '{}' (first declared on line {})",
                            form, first
                        )));
                    } else {
                        form_lines.insert(form.to_owned(), line);
                        grammar.lexicon.insert(form.to_owned(), Category::from(category));
                    }
                }
                Err(message) => errors.push(fail(message)),
            },
            "rule" => match parse_rule(rest) {
                Ok(rule) => {
                    if let Some(first) = seen_rules.get(&rule) {
                        warnings.push(Diagnostic {
                            line,
                            message: format!("duplicate rule '{}' (first on line {})", rule, first),
                        });
                    } else {
                        seen_rules.insert(rule.clone(), line);
                        rule_lines.push((line, rule.clone()));
                        grammar.add_rule(rule);
                    }
                }
                Err(message) => errors.push(fail(message)),
            },
            other => errors.push(fail(format!("unknown directive '{}'", other))),
        }
    }

    // Rules may mention categories that no word carries yet.
    let known: HashSet<&Category> = grammar.lexicon.values().collect();
    for (line, rule) in &rule_lines {
        let mut missing: Vec<&Category> = vec![&rule.head, &rule.dependent];
        missing.dedup();
        for category in missing {
            if !known.contains(category) {
                warnings.push(Diagnostic {
                    line: *line,
                    message: format!("category '{}' does not occur in the lexicon", category),
                });
            }
        }
    }
    warnings.sort_by_key(|w| w.line);

    GrammarReport {
        grammar,
        errors,
        warnings,
    }
}

fn single_token<'a>(s: &'a str, what: &str) -> std::result::Result<&'a str, String> {
    let s = s.trim();
    if s.is_empty() {
        Err(format!("missing {}", what))
    } else if s.contains(char::is_whitespace) {
        Err(format!("{} '{}' contains whitespace", what, s))
    } else {
        Ok(s)
    }
}

fn parse_word(rest: &str) -> std::result::Result<(&str, &str), String> {
    let (form, category) = rest
        .split_once(':')
        .ok_or_else(|| "expected 'word FORM : CATEGORY'".to_owned())?;
    Ok((single_token(form, "form")?, single_token(category, "category")?))
}

fn parse_rule(rest: &str) -> std::result::Result<LinkRule, String> {
    let mut ops = rest.match_indices(['<', '>', '~']);
    let (at, op) = ops
        .next()
        .ok_or_else(|| "expected 'rule HEAD <|>|~ DEPENDENT'".to_owned())?;
    if ops.next().is_some() {
        return Err("rule has more than one direction operator".to_owned());
    }
    let direction = match op {
        "<" => Direction::Pre,
        ">" => Direction::Post,
        _ => Direction::Either,
    };
    let head = single_token(&rest[..at], "head category")?;
    let dependent = single_token(&rest[at + 1..], "dependent category")?;
    Ok(LinkRule::new(head, direction, dependent))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(sentence: &Sentence, i: usize) -> &Word {
        sentence.word(i).unwrap()
    }

    #[test]
    fn load_small_grammar() {
        let g = load_grammar("word dog : N\nword barks : V\nrule V < N").unwrap();
        assert_eq!(g.lexicon_size(), 2);
        assert_eq!(g.rules(), &[LinkRule::new("V", Direction::Pre, "N")]);
    }

    #[test]
    fn duplicate_form_is_an_error() {
        let err = load_grammar("word the : D\nword the : N").unwrap_err();
        match err {
            Error::Format { line, message } => {
                assert_eq!(line, 2);
                assert!(message.contains("duplicate form 'the'"), "{}", message);
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn empty_file_is_null_grammar() {
        let g = load_grammar("").unwrap();
        assert_eq!(g.lexicon_size(), 0);
        let s = Sentence::synthetic(2, "X");
        assert!(!g.permits(word(&s, 1), word(&s, 2)));
        assert!(!g.permits(word(&s, 2), word(&s, 1)));
    }

    #[test]
    fn format_errors() {
        for (text, needle) in [
            ("frobnicate x", "unknown directive 'frobnicate'"),
            ("word dog N", "expected 'word FORM : CATEGORY'"),
            ("word : N", "missing form"),
            ("word big dog : N", "contains whitespace"),
            ("rule V N", "expected 'rule"),
            ("rule V < N > D", "more than one"),
            ("rule < N", "missing head"),
        ] {
            let err = load_grammar(text).unwrap_err();
            assert!(err.to_string().contains(needle), "{}: {}", text, err);
            assert!(err.to_string().starts_with("line 1:"));
        }
    }

    #[test]
    fn tolerant_whitespace_and_comments() {
        let g = load_grammar("# header\n\n  word   dog:N  \n\tword barks\t:\tV\nrule V<N\n").unwrap();
        assert_eq!(g.lexicon_size(), 2);
        assert_eq!(g.category_of("dog").unwrap().as_str(), "N");
        assert_eq!(g.rules().len(), 1);
    }

    #[test]
    fn unknown_rule_category_is_a_warning() {
        let report = check_grammar("word dog : N\nrule V < N\nrule V < N");
        assert!(report.is_ok());
        assert_eq!(report.warnings.len(), 2);
        assert_eq!(report.warnings[0].line, 2);
        assert!(report.warnings.iter().any(|w| w.message.contains("duplicate rule")));
        assert!(report.warnings.iter().any(|w| w.message.contains("category 'V'")));
    }

    #[test]
    fn collects_all_errors() {
        let report = check_grammar("word a : X\nbogus\nword a : Y\nrule X");
        let lines: Vec<usize> = report
            .errors
            .iter()
            .map(|e| match e {
                Error::Format { line, .. } => *line,
                _ => 0,
            })
            .collect();
        assert_eq!(lines, vec![2, 3, 4]);
    }

    #[test]
    fn permits_respects_direction() {
        let g = load_grammar("word the : D\nword big : A\nword house : N\nrule N < D").unwrap();
        let s = g.sentence(["the", "big", "house"]).unwrap();
        assert!(g.permits(word(&s, 3), word(&s, 1)));
        assert!(!g.permits(word(&s, 1), word(&s, 3)));

        let g = load_grammar("word sang : V\nword songs : N\nrule V > N").unwrap();
        let s = g.sentence(["sang", "songs"]).unwrap();
        assert!(g.permits(word(&s, 1), word(&s, 2)));
        let s = g.sentence(["songs", "sang"]).unwrap();
        assert!(!g.permits(word(&s, 2), word(&s, 1)));
    }

    #[test]
    fn either_direction() {
        let g = load_grammar("word a : A\nword b : B\nrule A ~ B").unwrap();
        let s = g.sentence(["a", "b", "a"]).unwrap();
        assert!(g.permits(word(&s, 1), word(&s, 2)));
        assert!(g.permits(word(&s, 3), word(&s, 2)));
        assert!(!g.permits(word(&s, 2), word(&s, 1)));
    }

    #[test]
    fn pre_and_post_rules_combine() {
        let g = load_grammar("word a : A\nrule A < A\nrule A > A").unwrap();
        let s = g.sentence(["a", "a"]).unwrap();
        assert!(g.permits(word(&s, 1), word(&s, 2)));
        assert!(g.permits(word(&s, 2), word(&s, 1)));
        assert!(!g.permits(word(&s, 1), word(&s, 1)));
    }

    #[test]
    fn unknown_word_lookup() {
        let g = load_grammar("word dog : N").unwrap();
        assert_eq!(
            g.sentence(["dog", "cat"]).unwrap_err(),
            Error::UnknownWord {
                form: "cat".into(),
                index: 2
            }
        );
    }

    #[test]
    fn tree_backed_membership() {
        let g = TreeBackedGrammar::new([(2, 1), (3, 2)]);
        let s = Sentence::synthetic(3, "X");
        assert!(g.permits(word(&s, 2), word(&s, 1)));
        assert!(!g.permits(word(&s, 1), word(&s, 2)));
        assert!(!g.permits(word(&s, 3), word(&s, 1)));
    }

    #[test]
    fn counter_reset() {
        let mut c = QueryCounter {
            permit_queries: 12,
            link_operations: 0,
        };
        c.reset();
        assert_eq!(c, QueryCounter::new());
        c.reset();
        assert_eq!(c, QueryCounter::new());
        let s = Sentence::synthetic(2, "X");
        c.permits(&RuleGrammar::null(), word(&s, 1), word(&s, 2));
        assert_eq!(c.permit_queries, 1);
    }
}
