//! The deterministic word-at-a-time parsers.
//!
//! All six accept words strictly left to right and attach each link while
//! accepting the later of its two words:
//!
//! - `Esh` / `Esd`: exhaustive backward search over every earlier word,
//!   asking for a head before (`Esh`) or after (`Esd`) a dependent. No
//!   uniqueness filtering, so output may be multi-headed or cyclic.
//! - `Eshu` / `Esdu`: the same scans, skipping head queries once the new
//!   word has a head and dependent queries for words that already have one.
//! - `Lsu`: list-based search. Dependents come from the headless list, the
//!   head from the list of all words, both most recent first.
//! - `Lsup`: `Lsu` restricted to projective structures. Dependents must be
//!   a consecutive run at the front of the headless list, and the head is
//!   sought by climbing from the most recent word not already subordinate
//!   to the new word.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::analysis::{Analysis, Link, Sentence, Word};
use crate::error::Error;
use crate::grammar::{Grammar, QueryCounter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Esh,
    Esd,
    Eshu,
    Esdu,
    Lsu,
    Lsup,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::Esh,
        Algorithm::Esd,
        Algorithm::Eshu,
        Algorithm::Esdu,
        Algorithm::Lsu,
        Algorithm::Lsup,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Esh => "esh",
            Algorithm::Esd => "esd",
            Algorithm::Eshu => "eshu",
            Algorithm::Esdu => "esdu",
            Algorithm::Lsu => "lsu",
            Algorithm::Lsup => "lsup",
        }
    }

    /// Whether the parser never gives a word a second head.
    pub fn enforces_uniqueness(self) -> bool {
        !matches!(self, Algorithm::Esh | Algorithm::Esd)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .iter()
            .copied()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Refused(format!("unknown algorithm '{}'", s)))
    }
}

/// A link together with the word whose acceptance created it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LinkEvent {
    pub link: Link,
    pub step: usize,
}

/// Result of one parse run.
#[derive(Debug, Clone)]
pub struct ParseOutcome {
    pub analysis: Analysis,
    /// End-of-parse unity check; always equals `analysis.check_unity()`.
    pub unity: bool,
    pub stats: QueryCounter,
    /// Links in creation order.
    pub events: Vec<LinkEvent>,
    /// Final Wordlist, most recent first.
    pub wordlist: Vec<usize>,
    /// Final Headlist, most recent first.
    pub headlist: Vec<usize>,
}

/// Working data of a parse run.
///
/// `wordlist` and `headlist` are kept most-recent-first, as the list-based
/// algorithms read them.
#[derive(Debug, Clone)]
pub struct ParseState<'s> {
    sentence: &'s Sentence,
    wordlist: VecDeque<usize>,
    headlist: VecDeque<usize>,
    links: Vec<Link>,
    head: Vec<Option<usize>>,
    events: Vec<LinkEvent>,
    counter: QueryCounter,
    step: usize,
}

impl<'s> ParseState<'s> {
    pub fn new(sentence: &'s Sentence) -> Self {
        ParseState {
            sentence,
            wordlist: VecDeque::with_capacity(sentence.len()),
            headlist: VecDeque::new(),
            links: Vec::new(),
            head: vec![None; sentence.len() + 1],
            events: Vec::new(),
            counter: QueryCounter::new(),
            step: 0,
        }
    }

    pub fn wordlist(&self) -> impl Iterator<Item = usize> + '_ {
        self.wordlist.iter().copied()
    }

    pub fn headlist(&self) -> impl Iterator<Item = usize> + '_ {
        self.headlist.iter().copied()
    }

    pub fn links(&self) -> &[Link] {
        &self.links
    }

    pub fn counter(&self) -> QueryCounter {
        self.counter
    }

    /// The first head attached to `w`, if any.
    pub fn head_of(&self, w: usize) -> Option<usize> {
        self.head[w]
    }

    fn word(&self, w: usize) -> &'s Word {
        &self.sentence.words()[w - 1]
    }

    /// Adds the next word to the front of Wordlist and returns its index.
    fn accept(&mut self) -> usize {
        self.step += 1;
        self.wordlist.push_front(self.step);
        self.step
    }

    fn ask<G: Grammar + ?Sized>(&mut self, grammar: &G, head: usize, dependent: usize) -> bool {
        let (h, d) = (self.word(head), self.word(dependent));
        self.counter.permits(grammar, h, d)
    }

    fn link(&mut self, head: usize, dependent: usize) {
        let link = Link::new(head, dependent);
        self.links.push(link);
        self.head[dependent].get_or_insert(head);
        self.events.push(LinkEvent {
            link,
            step: self.step,
        });
        self.counter.record_link();
        if let Some(at) = self.headlist.iter().position(|&x| x == dependent) {
            self.headlist.remove(at);
        }
    }

    fn finish_word(&mut self, w: usize) {
        if self.head[w].is_none() {
            self.headlist.push_front(w);
        }
    }

    /// Whether `a` is dominated by `b`, following first heads upward.
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

    fn into_outcome(self) -> ParseOutcome {
        let analysis = Analysis::new(self.sentence.clone(), self.links)
            .expect("parsers only link distinct in-range words");
        let unity = analysis.check_unity();
        ParseOutcome {
            analysis,
            unity,
            stats: self.counter,
            events: self.events,
            wordlist: self.wordlist.into_iter().collect(),
            headlist: self.headlist.into_iter().collect(),
        }
    }
}

/// Parses `sentence` with the chosen algorithm.
pub fn parse<G: Grammar + ?Sized>(algorithm: Algorithm, grammar: &G, sentence: &Sentence) -> ParseOutcome {
    let mut state = ParseState::new(sentence);
    for _ in 0..sentence.len() {
        let w = state.accept();
        match algorithm {
            Algorithm::Esh => exhaustive_step(&mut state, grammar, w, true, false),
            Algorithm::Esd => exhaustive_step(&mut state, grammar, w, false, false),
            Algorithm::Eshu => exhaustive_step(&mut state, grammar, w, true, true),
            Algorithm::Esdu => exhaustive_step(&mut state, grammar, w, false, true),
            Algorithm::Lsu => list_step(&mut state, grammar, w),
            Algorithm::Lsup => projective_step(&mut state, grammar, w),
        }
    }
    state.into_outcome()
}

pub fn parse_esh<G: Grammar + ?Sized>(grammar: &G, sentence: &Sentence) -> ParseOutcome {
    parse(Algorithm::Esh, grammar, sentence)
}

pub fn parse_esd<G: Grammar + ?Sized>(grammar: &G, sentence: &Sentence) -> ParseOutcome {
    parse(Algorithm::Esd, grammar, sentence)
}

pub fn parse_eshu<G: Grammar + ?Sized>(grammar: &G, sentence: &Sentence) -> ParseOutcome {
    parse(Algorithm::Eshu, grammar, sentence)
}

pub fn parse_esdu<G: Grammar + ?Sized>(grammar: &G, sentence: &Sentence) -> ParseOutcome {
    parse(Algorithm::Esdu, grammar, sentence)
}

pub fn parse_lsu<G: Grammar + ?Sized>(grammar: &G, sentence: &Sentence) -> ParseOutcome {
    parse(Algorithm::Lsu, grammar, sentence)
}

pub fn parse_lsup<G: Grammar + ?Sized>(grammar: &G, sentence: &Sentence) -> ParseOutcome {
    parse(Algorithm::Lsup, grammar, sentence)
}

fn exhaustive_step<G: Grammar + ?Sized>(
    state: &mut ParseState<'_>,
    grammar: &G,
    i: usize,
    heads_first: bool,
    unique: bool,
) {
    for j in (1..i).rev() {
        if heads_first {
            try_head(state, grammar, j, i, unique);
            try_dependent(state, grammar, j, i, unique);
        } else {
            try_dependent(state, grammar, j, i, unique);
            try_head(state, grammar, j, i, unique);
        }
    }
    state.finish_word(i);
}

// j as head of i
fn try_head<G: Grammar + ?Sized>(state: &mut ParseState<'_>, grammar: &G, j: usize, i: usize, unique: bool) {
    if unique && state.head[i].is_some() {
        return;
    }
    if state.ask(grammar, j, i) {
        state.link(j, i);
    }
}

// j as dependent of i
fn try_dependent<G: Grammar + ?Sized>(state: &mut ParseState<'_>, grammar: &G, j: usize, i: usize, unique: bool) {
    if unique && state.head[j].is_some() {
        return;
    }
    if state.ask(grammar, i, j) {
        state.link(i, j);
    }
}

fn list_step<G: Grammar + ?Sized>(state: &mut ParseState<'_>, grammar: &G, w: usize) {
    // Iterate a snapshot; deletions only affect the live list.
    let candidates: Vec<usize> = state.headlist().collect();
    for d in candidates {
        if state.ask(grammar, w, d) {
            state.link(w, d);
        }
    }

    let earlier: Vec<usize> = state.wordlist().filter(|&h| h != w).collect();
    for h in earlier {
        if state.ask(grammar, h, w) {
            state.link(h, w);
            break;
        }
    }
    state.finish_word(w);
}

fn projective_step<G: Grammar + ?Sized>(state: &mut ParseState<'_>, grammar: &G, w: usize) {
    while let Some(&d) = state.headlist.front() {
        if state.ask(grammar, w, d) {
            state.link(w, d);
        } else {
            break;
        }
    }

    let mut candidate = (1..w).rev().find(|&k| !state.is_subordinate(k, w));
    while let Some(h) = candidate {
        if state.ask(grammar, h, w) {
            state.link(h, w);
            break;
        }
        candidate = state.head[h];
    }
    state.finish_word(w);
}
