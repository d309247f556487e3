//! Test-only generators and oracles. Nothing here calls the predicates it
//! is used to check.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use incdep::grammar::{Direction, Grammar, LinkRule, RuleGrammar};
use incdep::{Analysis, Link, Sentence};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
        .join(name)
}

pub fn links(xs: &[(usize, usize)]) -> BTreeSet<Link> {
    xs.iter().copied().map(Link::from).collect()
}

/// Reachability matrix by Warshall's algorithm; `reach[a][b]` means
/// `b` is reachable from `a` by zero or more head→dependent steps.
#[allow(clippy::needless_range_loop)]
pub fn reachability(n: usize, links: &BTreeSet<Link>) -> Vec<Vec<bool>> {
    let mut reach = vec![vec![false; n + 1]; n + 1];
    for (w, row) in reach.iter_mut().enumerate().skip(1) {
        row[w] = true;
    }
    for l in links {
        reach[l.head][l.dependent] = true;
    }
    for k in 1..=n {
        for i in 1..=n {
            if reach[i][k] {
                for j in 1..=n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    reach
}

pub fn closure_oracle(n: usize, links: &BTreeSet<Link>, w: usize) -> BTreeSet<usize> {
    let reach = reachability(n, links);
    (1..=n).filter(|&x| reach[w][x]).collect()
}

/// Every word's comprised set, sorted, has no gaps.
pub fn projective_oracle(n: usize, links: &BTreeSet<Link>) -> bool {
    let reach = reachability(n, links);
    (1..=n).all(|w| {
        let mut span: Vec<usize> = (1..=n).filter(|&x| reach[w][x]).collect();
        span.sort_unstable();
        span.windows(2).all(|p| p[1] == p[0] + 1)
    })
}

/// Single root, every word reachable from it, one head per word.
pub fn unity_oracle(n: usize, links: &BTreeSet<Link>) -> bool {
    let mut heads = vec![0usize; n + 1];
    for l in links {
        if heads[l.dependent] != 0 {
            return false;
        }
        heads[l.dependent] = l.head;
    }
    let roots: Vec<usize> = (1..=n).filter(|&w| heads[w] == 0).collect();
    if roots.len() != 1 {
        return false;
    }
    let reach = reachability(n, links);
    (1..=n).all(|w| reach[roots[0]][w])
}

/// Head assignment where each word independently gets a random head or
/// none: unique-headed, possibly cyclic or disconnected.
pub fn random_unique_headed<R: Rng>(n: usize, rng: &mut R) -> BTreeSet<Link> {
    let mut out = BTreeSet::new();
    for d in 1..=n {
        let h = rng.gen_range(0..=n);
        if h != 0 && h != d {
            out.insert(Link::new(h, d));
        }
    }
    out
}

/// Random single-rooted tree, built independently of the library's
/// generator: a random root, then each remaining word (in random order)
/// attached to a random word already in the tree.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> BTreeSet<Link> {
    let mut words: Vec<usize> = (1..=n).collect();
    words.shuffle(rng);
    let mut placed = vec![words[0]];
    let mut out = BTreeSet::new();
    for &w in &words[1..] {
        let h = *placed.choose(rng).unwrap();
        out.insert(Link::new(h, w));
        placed.push(w);
    }
    out
}

pub const CATEGORIES: [&str; 3] = ["A", "B", "C"];
pub const FORMS: [&str; 3] = ["a", "b", "c"];

/// Three categories, one form each, and up to six random directional rules.
pub fn random_rule_grammar<R: Rng>(rng: &mut R) -> RuleGrammar {
    let count = rng.gen_range(0..=6);
    let rules: Vec<LinkRule> = (0..count)
        .map(|_| {
            let dir = [Direction::Pre, Direction::Post, Direction::Either][rng.gen_range(0..3)];
            LinkRule::new(
                CATEGORIES[rng.gen_range(0..3)],
                dir,
                CATEGORIES[rng.gen_range(0..3)],
            )
        })
        .collect();
    RuleGrammar::new(FORMS.iter().copied().zip(CATEGORIES.iter().copied()), rules).unwrap()
}

/// All sentences over the three forms of length 1..=max_len.
pub fn all_sentences(grammar: &RuleGrammar, max_len: usize) -> Vec<Sentence> {
    let mut out = Vec::new();
    let mut current: Vec<Vec<&str>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for prefix in &current {
            for f in FORMS {
                let mut s = prefix.clone();
                s.push(f);
                out.push(grammar.sentence(s.iter().copied()).unwrap());
                next.push(s);
            }
        }
        current = next;
    }
    out
}

pub fn analysis(n: usize, links: &BTreeSet<Link>) -> Analysis {
    Analysis::new(Sentence::synthetic(n, "X"), links.iter().copied()).unwrap()
}

/// LSUP with the uncorrected head search: start climbing from the word
/// immediately before W, even when it is already subordinate to W.
/// Reaching W itself ends the climb.
pub fn lsup_previous_word_only<G: Grammar>(grammar: &G, sentence: &Sentence) -> BTreeSet<Link> {
    let n = sentence.len();
    let mut head = vec![None::<usize>; n + 1];
    let mut headlist: Vec<usize> = Vec::new(); // most recent last
    let word = |i: usize| sentence.word(i).unwrap();
    for w in 1..=n {
        while let Some(&d) = headlist.last() {
            if grammar.permits(word(w), word(d)) {
                head[d] = Some(w);
                headlist.pop();
            } else {
                break;
            }
        }
        let mut h = if w > 1 { Some(w - 1) } else { None };
        while let Some(cand) = h {
            if cand == w {
                break;
            }
            if grammar.permits(word(cand), word(w)) {
                head[w] = Some(cand);
                break;
            }
            h = head[cand];
        }
        if head[w].is_none() {
            headlist.push(w);
        }
    }
    (1..=n).filter_map(|d| head[d].map(|h| Link::new(h, d))).collect()
}
