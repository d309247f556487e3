//! Words, links and analyses, with the tree predicates every parser and
//! checker relies on.
//!
//! Word indices are 1-based. An [`Analysis`] is an arbitrary set of links:
//! it may be multi-headed or cyclic, and the predicates are total on such
//! inputs so that naive parser output can be classified rather than
//! rejected.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A grammatical category symbol.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Category(String);

impl Category {
    pub fn new(name: impl Into<String>) -> Self {
        Category(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<String> for Category {
    fn from(s: String) -> Self {
        Category(s)
    }
}

impl From<&str> for Category {
    fn from(s: &str) -> Self {
        Category(s.to_owned())
    }
}

/// One input token.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    index: usize,
    form: String,
    category: Category,
}

impl Word {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn form(&self) -> &str {
        &self.form
    }

    pub fn category(&self) -> &Category {
        &self.category
    }
}

/// An ordered sequence of words, indexed from 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Sentence {
    words: Vec<Word>,
}

impl Sentence {
    /// Builds a sentence from `(form, category)` pairs, assigning indices
    /// 1..=n in order.
    pub fn new<F, C>(tokens: impl IntoIterator<Item = (F, C)>) -> Result<Self>
    where
        F: Into<String>,
        C: Into<Category>,
    {
        let mut words = Vec::new();
        for (k, (form, category)) in tokens.into_iter().enumerate() {
            let index = k + 1;
            let form = form.into();
            let category = category.into();
            if form.is_empty() {
                return Err(Error::EmptyForm(index));
            }
            if category.as_str().is_empty() {
                return Err(Error::EmptyCategory(index));
            }
            words.push(Word {
                index,
                form,
                category,
            });
        }
        Ok(Sentence { words })
    }

    /// A sentence of `n` synthetic words `w1..wn`, all of category `category`.
    pub fn synthetic(n: usize, category: &str) -> Self {
        Sentence::new((1..=n).map(|i| (format!("w{}", i), Category::from(category))))
            .expect("synthetic forms are non-empty")
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// The word at 1-based `index`.
    pub fn word(&self, index: usize) -> Result<&Word> {
        index
            .checked_sub(1)
            .and_then(|k| self.words.get(k))
            .ok_or(Error::IndexOutOfRange {
                index,
                len: self.len(),
            })
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= 1 && index <= self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index,
                len: self.len(),
            })
        }
    }
}

/// A head → dependent link between two word indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Link {
    pub head: usize,
    pub dependent: usize,
}

impl Link {
    pub fn new(head: usize, dependent: usize) -> Self {
        Link { head, dependent }
    }
}

impl From<(usize, usize)> for Link {
    fn from((head, dependent): (usize, usize)) -> Self {
        Link { head, dependent }
    }
}

impl fmt::Display for Link {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.head, self.dependent)
    }
}

/// A set of links over a sentence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Analysis {
    sentence: Sentence,
    links: BTreeSet<Link>,
}

impl Analysis {
    /// Validates that every link is in range and not a self-link.
    pub fn new<L: Into<Link>>(sentence: Sentence, links: impl IntoIterator<Item = L>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for link in links {
            let link = link.into();
            sentence.check_index(link.head)?;
            sentence.check_index(link.dependent)?;
            if link.head == link.dependent {
                return Err(Error::SelfLink(link.head));
            }
            set.insert(link);
        }
        Ok(Analysis {
            sentence,
            links: set,
        })
    }

    /// An analysis with no links.
    pub fn unlinked(sentence: Sentence) -> Self {
        Analysis {
            sentence,
            links: BTreeSet::new(),
        }
    }

    pub fn sentence(&self) -> &Sentence {
        &self.sentence
    }

    pub fn links(&self) -> &BTreeSet<Link> {
        &self.links
    }

    pub fn len(&self) -> usize {
        self.sentence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentence.is_empty()
    }

    /// Heads of every word, indexed by word index (slot 0 unused).
    pub fn heads_of(&self) -> Vec<Vec<usize>> {
        let mut heads = vec![Vec::new(); self.len() + 1];
        for link in &self.links {
            heads[link.dependent].push(link.head);
        }
        heads
    }

    /// Dependents of every word, indexed by word index (slot 0 unused),
    /// in ascending order.
    pub fn dependents_of(&self) -> Vec<Vec<usize>> {
        let mut deps = vec![Vec::new(); self.len() + 1];
        for link in &self.links {
            deps[link.head].push(link.dependent);
        }
        deps
    }

    /// The single head of each word, or `None` when the word is
    /// independent. Fails on the first word with two heads.
    pub fn head_vector(&self) -> Result<Vec<Option<usize>>> {
        let mut heads = vec![None; self.len() + 1];
        for link in &self.links {
            if heads[link.dependent].replace(link.head).is_some() {
                return Err(Error::MultipleHeads(link.dependent));
            }
        }
        Ok(heads)
    }

    /// The word itself plus every word it dominates. Terminates on cyclic
    /// link sets.
    pub fn comprises(&self, w: usize) -> Result<BTreeSet<usize>> {
        self.sentence.check_index(w)?;
        Ok(closure_from(&self.dependents_of(), w))
    }

    /// True iff `a` is dominated by `b` (and `a != b`).
    pub fn is_subordinate(&self, a: usize, b: usize) -> Result<bool> {
        self.sentence.check_index(a)?;
        let comprised = self.comprises(b)?;
        Ok(a != b && comprised.contains(&a))
    }

    /// True iff every word comprises a contiguous interval of indices.
    pub fn is_projective(&self) -> bool {
        let deps = self.dependents_of();
        (1..=self.len()).all(|w| {
            let span = closure_from(&deps, w);
            let lo = *span.first().expect("closure contains its start");
            let hi = *span.last().expect("closure contains its start");
            hi - lo + 1 == span.len()
        })
    }

    /// True iff no word has two or more heads.
    pub fn check_uniqueness(&self) -> bool {
        self.head_vector().is_ok()
    }

    /// True iff the links form a single tree with one root that
    /// comprises every word. A one-word sentence with no links is a tree;
    /// an empty sentence is not.
    pub fn check_unity(&self) -> bool {
        let heads = match self.head_vector() {
            Ok(h) => h,
            Err(_) => return false,
        };
        let mut roots = (1..=self.len()).filter(|&w| heads[w].is_none());
        let root = match (roots.next(), roots.next()) {
            (Some(r), None) => r,
            _ => return false,
        };
        // With unique heads and a single root, acyclicity is equivalent to
        // the root reaching every word.
        closure_from(&self.dependents_of(), root).len() == self.len()
    }

    /// Words without a head, in surface order.
    pub fn independents(&self) -> Vec<usize> {
        let heads = self.heads_of();
        (1..=self.len()).filter(|&w| heads[w].is_empty()).collect()
    }
}

/// Reflexive-transitive closure of the dependent relation from `start`.
fn closure_from(deps: &[Vec<usize>], start: usize) -> BTreeSet<usize> {
    let mut seen = BTreeSet::new();
    let mut stack = vec![start];
    while let Some(w) = stack.pop() {
        if seen.insert(w) {
            stack.extend(deps[w].iter().copied().filter(|d| !seen.contains(d)));
        }
    }
    seen
}
