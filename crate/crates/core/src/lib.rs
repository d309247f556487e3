//! Word-at-a-time dependency parsing.
//!
//! Parsers accept words strictly left to right and link each one as soon
//! as the grammar allows. The crate provides:
//!
//! - [`analysis`]: words, links, and the tree predicates (comprise,
//!   subordination, projectivity, uniqueness, unity).
//! - [`grammar`]: the constant-time permission contract, a rule-table
//!   grammar with a text format, and a tree-backed test grammar.
//! - [`algorithms`]: six deterministic parsers, from exhaustive pairwise
//!   search to list-based search with projectivity.
//! - [`ambiguity`]: chronological backtracking over the list-based
//!   decisions, and an exhaustive enumeration oracle.
//! - [`table`], [`bench`], [`cli`]: I/O formats and batch commands.
//!
//! ```
//! use incdep::{algorithms::parse_lsup, grammar::load_grammar};
//!
//! let g = load_grammar("word the : D\nword dog : N\nword barks : V\nrule N < D\nrule V < N").unwrap();
//! let s = g.sentence(["the", "dog", "barks"]).unwrap();
//! let out = parse_lsup(&g, &s);
//! assert!(out.unity);
//! ```

pub mod algorithms;
pub mod ambiguity;
pub mod analysis;
pub mod bench;
pub mod cli;
pub mod error;
pub mod grammar;
pub mod table;

pub use algorithms::{parse, Algorithm, ParseOutcome};
pub use analysis::{Analysis, Category, Link, Sentence, Word};
pub use error::{Error, Result};
pub use grammar::{load_grammar, Grammar, RuleGrammar, TreeBackedGrammar};
