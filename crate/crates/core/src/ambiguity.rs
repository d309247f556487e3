//! Backtracking search over the list-based parsers' decisions, and an
//! exhaustive enumeration oracle to check it against.
//!
//! Every permitted link the list-based parsers would make becomes a choice
//! point with two alternatives: take the link, or decline it. The search is
//! depth first and chronological; taking is always tried first, so the
//! first complete analysis on an unambiguous grammar is exactly the one the
//! deterministic parser builds.
//!
//! Declining has the same meaning as a failed grammar query. In the
//! projective search that ends the dependent scan (predependents may not be
//! skipped) and, for an independent head candidate, the head climb.

use std::collections::BTreeSet;

use crate::algorithms::{LinkEvent, ParseOutcome};
use crate::analysis::{Analysis, Link, Sentence};
use crate::error::{Error, Result};
use crate::grammar::{Grammar, LinkRule, QueryCounter, RuleGrammar, Direction};

/// Default length bound for [`oracle_enumerate`].
pub const ORACLE_BOUND: usize = 8;

/// Distinct complete analyses of one sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisSet {
    sentence: Sentence,
    link_sets: BTreeSet<BTreeSet<Link>>,
}

impl AnalysisSet {
    pub fn new(sentence: Sentence) -> Self {
        AnalysisSet {
            sentence,
            link_sets: BTreeSet::new(),
        }
    }

    fn insert(&mut self, links: BTreeSet<Link>) -> bool {
        self.link_sets.insert(links)
    }

    pub fn len(&self) -> usize {
        self.link_sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.link_sets.is_empty()
    }

    pub fn sentence(&self) -> &Sentence {
        &self.sentence
    }

    pub fn contains(&self, links: &BTreeSet<Link>) -> bool {
        self.link_sets.contains(links)
    }

    /// Link sets in a fixed (lexicographic) order.
    pub fn link_sets(&self) -> &BTreeSet<BTreeSet<Link>> {
        &self.link_sets
    }

    pub fn analyses(&self) -> impl Iterator<Item = Analysis> + '_ {
        self.link_sets.iter().map(move |links| {
            Analysis::new(self.sentence.clone(), links.iter().copied())
                .expect("stored link sets are valid for the sentence")
        })
    }
}

/// Instrumentation for one backtracking run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub counter: QueryCounter,
    /// Returns to a choice point to try its untried alternative.
    pub backtracks: u64,
    /// `backtracks` broken down by the word being accepted (index 0 unused).
    pub backtracks_by_word: Vec<u64>,
    /// Number of visited states in which the first `k` words formed a
    /// single tree, indexed by `k` (index 0 unused).
    pub complete_prefixes: Vec<u64>,
    /// Fully consumed sentences examined, complete or not.
    pub leaves: u64,
}

#[derive(Debug, Clone)]
pub struct SearchReport<T> {
    pub result: T,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Stop,
}

struct Search<'a, G: ?Sized> {
    grammar: &'a G,
    sentence: &'a Sentence,
    projective: bool,
    stop_at_first: bool,
    // Both lists are stacks: the most recent word is last.
    wordlist: Vec<usize>,
    headlist: Vec<usize>,
    head: Vec<Option<usize>>,
    events: Vec<LinkEvent>,
    stats: SearchStats,
    found: AnalysisSet,
    first: Option<(Vec<LinkEvent>, Vec<usize>)>,
    first_leaf: Option<(Vec<LinkEvent>, Vec<usize>)>,
}

impl<'a, G: Grammar + ?Sized> Search<'a, G> {
    fn new(grammar: &'a G, sentence: &'a Sentence, projective: bool, stop_at_first: bool) -> Self {
        let n = sentence.len();
        Search {
            grammar,
            sentence,
            projective,
            stop_at_first,
            wordlist: Vec::with_capacity(n),
            headlist: Vec::with_capacity(n),
            head: vec![None; n + 1],
            events: Vec::new(),
            stats: SearchStats {
                backtracks_by_word: vec![0; n + 1],
                complete_prefixes: vec![0; n + 1],
                ..SearchStats::default()
            },
            found: AnalysisSet::new(sentence.clone()),
            first: None,
            first_leaf: None,
        }
    }

    fn ask(&mut self, head: usize, dependent: usize) -> bool {
        let words = self.sentence.words();
        self.stats
            .counter
            .permits(self.grammar, &words[head - 1], &words[dependent - 1])
    }

    fn link(&mut self, head: usize, dependent: usize, step: usize) {
        self.head[dependent] = Some(head);
        self.events.push(LinkEvent {
            link: Link::new(head, dependent),
            step,
        });
        self.stats.counter.record_link();
    }

    fn unlink(&mut self, dependent: usize) {
        self.head[dependent] = None;
        self.events.pop();
    }

    fn backtrack(&mut self, w: usize) {
        self.stats.backtracks += 1;
        self.stats.backtracks_by_word[w] += 1;
    }

    fn is_subordinate(&self, a: usize, b: usize) -> bool {
        let mut cur = a;
        for _ in 0..self.sentence.len() {
            match self.head[cur] {
                Some(h) if h == b => return true,
                Some(h) => cur = h,
                None => return false,
            }
        }
        false
    }

    fn prefix_is_tree(&self, k: usize) -> bool {
        if self.headlist.len() != 1 {
            return false;
        }
        let root = self.headlist[0];
        (1..=k).all(|w| w == root || self.is_subordinate(w, root))
    }

    /// Accept word `w` (or finish when the sentence is exhausted).
    fn next_word(&mut self, w: usize) -> Flow {
        let done = w - 1;
        if done >= 1 && self.prefix_is_tree(done) {
            self.stats.complete_prefixes[done] += 1;
        }
        if done == self.sentence.len() {
            return self.leaf();
        }
        self.wordlist.push(w);
        let candidates: Vec<usize> = self.headlist.iter().rev().copied().collect();
        let flow = self.dependents(w, &candidates, 0);
        self.wordlist.pop();
        flow
    }

    fn dependents(&mut self, w: usize, candidates: &[usize], mut k: usize) -> Flow {
        while k < candidates.len() {
            let d = candidates[k];
            if self.ask(w, d) {
                let at = self
                    .headlist
                    .iter()
                    .position(|&x| x == d)
                    .expect("dependent candidates come from Headlist");
                self.headlist.remove(at);
                self.link(w, d, w);
                let flow = self.dependents(w, candidates, k + 1);
                self.unlink(d);
                self.headlist.insert(at, d);
                if flow == Flow::Stop {
                    return Flow::Stop;
                }
                self.backtrack(w);
            }
            if self.projective {
                break;
            }
            k += 1;
        }
        self.heads(w)
    }

    fn heads(&mut self, w: usize) -> Flow {
        let candidates: Vec<usize> = if self.projective {
            let mut path = Vec::new();
            let mut cur = (1..w).rev().find(|&k| !self.is_subordinate(k, w));
            while let Some(h) = cur {
                path.push(h);
                cur = self.head[h];
            }
            path
        } else {
            self.wordlist.iter().rev().copied().filter(|&h| h != w).collect()
        };

        for h in candidates {
            if self.ask(h, w) {
                self.link(h, w, w);
                let flow = self.next_word(w + 1);
                self.unlink(w);
                if flow == Flow::Stop {
                    return Flow::Stop;
                }
                self.backtrack(w);
            }
        }

        self.headlist.push(w);
        let flow = self.next_word(w + 1);
        self.headlist.pop();
        flow
    }

    fn leaf(&mut self) -> Flow {
        self.stats.leaves += 1;
        let headlist: Vec<usize> = self.headlist.iter().rev().copied().collect();
        if self.first_leaf.is_none() {
            self.first_leaf = Some((self.events.clone(), headlist.clone()));
        }
        let links: BTreeSet<Link> = self.events.iter().map(|e| e.link).collect();
        let analysis = Analysis::new(self.sentence.clone(), links.iter().copied())
            .expect("search only links distinct in-range words");
        if !analysis.check_unity() {
            return Flow::Continue;
        }
        self.found.insert(links);
        if self.first.is_none() {
            self.first = Some((self.events.clone(), headlist));
        }
        if self.stop_at_first {
            Flow::Stop
        } else {
            Flow::Continue
        }
    }

    fn run(mut self) -> Self {
        if !self.sentence.is_empty() {
            self.next_word(1);
        }
        self
    }
}

/// Every complete analysis reachable by backtracking over the projective
/// (`projective = true`) or unrestricted list-based decisions.
pub fn parse_all<G: Grammar + ?Sized>(grammar: &G, sentence: &Sentence, projective: bool) -> AnalysisSet {
    search_all(grammar, sentence, projective).result
}

pub fn search_all<G: Grammar + ?Sized>(
    grammar: &G,
    sentence: &Sentence,
    projective: bool,
) -> SearchReport<AnalysisSet> {
    let search = Search::new(grammar, sentence, projective, false).run();
    SearchReport {
        result: search.found,
        stats: search.stats,
    }
}

/// The first complete analysis in search order. When none exists the
/// outcome carries the greedy (all-take) analysis with `unity` false.
pub fn parse_first<G: Grammar + ?Sized>(grammar: &G, sentence: &Sentence, projective: bool) -> ParseOutcome {
    search_first(grammar, sentence, projective).result
}

pub fn search_first<G: Grammar + ?Sized>(
    grammar: &G,
    sentence: &Sentence,
    projective: bool,
) -> SearchReport<ParseOutcome> {
    let search = Search::new(grammar, sentence, projective, true).run();
    let (events, headlist) = search
        .first
        .or(search.first_leaf)
        .unwrap_or_else(|| (Vec::new(), Vec::new()));
    let analysis = Analysis::new(sentence.clone(), events.iter().map(|e| e.link))
        .expect("search only links distinct in-range words");
    let unity = analysis.check_unity();
    SearchReport {
        result: ParseOutcome {
            analysis,
            unity,
            stats: search.stats.counter,
            events,
            wordlist: (1..=sentence.len()).rev().collect(),
            headlist,
        },
        stats: search.stats,
    }
}

/// Exhaustively enumerates head assignments, keeping those whose links are
/// all permitted and which form a single tree (projective, if requested).
pub fn oracle_enumerate<G: Grammar + ?Sized>(
    grammar: &G,
    sentence: &Sentence,
    projective: bool,
) -> Result<AnalysisSet> {
    oracle_enumerate_bounded(grammar, sentence, projective, ORACLE_BOUND)
}

pub fn oracle_enumerate_bounded<G: Grammar + ?Sized>(
    grammar: &G,
    sentence: &Sentence,
    projective: bool,
    bound: usize,
) -> Result<AnalysisSet> {
    let n = sentence.len();
    if n > bound {
        return Err(Error::TooLong { len: n, bound });
    }
    let mut set = AnalysisSet::new(sentence.clone());
    if n == 0 {
        return Ok(set);
    }
    let words = sentence.words();
    // options[w] = possible heads of word w+1; None means independent.
    let options: Vec<Vec<Option<usize>>> = words
        .iter()
        .map(|dep| {
            std::iter::once(None)
                .chain(
                    words
                        .iter()
                        .filter(|h| h.index() != dep.index() && grammar.permits(h, dep))
                        .map(|h| Some(h.index())),
                )
                .collect()
        })
        .collect();

    let mut choice = vec![0usize; n];
    loop {
        let roots = (0..n).filter(|&k| options[k][choice[k]].is_none()).count();
        if roots == 1 {
            let links: BTreeSet<Link> = (0..n)
                .filter_map(|k| options[k][choice[k]].map(|h| Link::new(h, k + 1)))
                .collect();
            let analysis = Analysis::new(sentence.clone(), links.iter().copied())?;
            if analysis.check_unity() && (!projective || analysis.is_projective()) {
                set.insert(links);
            }
        }
        // odometer
        let mut k = 0;
        loop {
            if k == n {
                return Ok(set);
            }
            choice[k] += 1;
            if choice[k] < options[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

const NOUNS: [&str; 3] = ["green", "house", "paint"];

/// A determiner followed by `n - 1` nouns, under `N < D` and `N < N`.
/// For `n = 4` this is "the green house paint".
pub fn worst_case_chain(n: usize) -> Result<(RuleGrammar, Sentence)> {
    if n < 2 {
        return Err(Error::Refused(format!(
            "worst-case chain needs at least 2 words, got {}",
            n
        )));
    }
    let forms: Vec<String> = std::iter::once("the".to_owned())
        .chain((0..n - 1).map(|k| match NOUNS.get(k) {
            Some(noun) => (*noun).to_owned(),
            None => format!("noun{}", k + 1),
        }))
        .collect();
    let lexicon = forms
        .iter()
        .enumerate()
        .map(|(k, f)| (f.clone(), if k == 0 { "D" } else { "N" }));
    let grammar = RuleGrammar::new(
        lexicon,
        [
            LinkRule::new("N", Direction::Pre, "D"),
            LinkRule::new("N", Direction::Pre, "N"),
        ],
    )?;
    let sentence = grammar.sentence(forms.iter().map(String::as_str))?;
    Ok((grammar, sentence))
}
