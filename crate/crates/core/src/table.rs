//! Tab-separated analysis tables and indented tree rendering.
//!
//! One word per row: `index<TAB>form<TAB>category<TAB>head`, with head 0
//! for an independent word. Lines starting with `#` carry `key: value`
//! annotations. A blank line ends a sentence.

use std::fmt::Write as _;

use crate::analysis::{Analysis, Link, Sentence};
use crate::error::{Error, Result};

/// Renders the rows of a table. A word with several heads lists the
/// lowest-numbered one; the others go to an `extra_links` annotation.
pub fn write_table(analysis: &Analysis) -> String {
    let heads = analysis.heads_of();
    let mut out = String::new();
    let mut extra = Vec::new();
    for word in analysis.sentence().words() {
        let mut hs = heads[word.index()].clone();
        hs.sort_unstable();
        let head = hs.first().copied().unwrap_or(0);
        extra.extend(hs.iter().skip(1).map(|&h| Link::new(h, word.index())));
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}",
            word.index(),
            word.form(),
            word.category(),
            head
        );
    }
    if !extra.is_empty() {
        let list: Vec<String> = extra.iter().map(Link::to_string).collect();
        let _ = writeln!(out, "# extra_links: {}", list.join(" "));
    }
    out
}

/// One sentence read back from a table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableBlock {
    pub analysis: Analysis,
    /// `# key: value` annotations in order, excluding `extra_links`.
    pub annotations: Vec<(String, String)>,
}

/// Reads every sentence block from table text.
pub fn read_table(text: &str) -> Result<Vec<TableBlock>> {
    let mut blocks = Vec::new();
    let mut rows: Vec<(String, String)> = Vec::new();
    let mut links: Vec<Link> = Vec::new();
    let mut annotations = Vec::new();
    let mut extra: Vec<(usize, Link)> = Vec::new();
    let mut started = false;

    let mut flush = |rows: &mut Vec<(String, String)>,
                     links: &mut Vec<Link>,
                     annotations: &mut Vec<(String, String)>,
                     extra: &mut Vec<(usize, Link)>|
     -> Result<()> {
        let sentence = Sentence::new(rows.drain(..))?;
        for (line, link) in extra.drain(..) {
            if link.head > sentence.len() || link.dependent > sentence.len() {
                return Err(Error::Format {
                    line,
                    message: format!("extra link {} is out of range", link),
                });
            }
            links.push(link);
        }
        let analysis = Analysis::new(sentence, links.drain(..))?;
        blocks.push(TableBlock {
            analysis,
            annotations: std::mem::take(annotations),
        });
        Ok(())
    };

    for (k, line) in text.lines().enumerate() {
        let line_no = k + 1;
        let fail = |message: String| Error::Format {
            line: line_no,
            message,
        };
        if line.trim().is_empty() {
            if started {
                flush(&mut rows, &mut links, &mut annotations, &mut extra)?;
                started = false;
            }
            continue;
        }
        started = true;
        if let Some(comment) = line.strip_prefix('#') {
            let (key, value) = comment
                .split_once(':')
                .map(|(k, v)| (k.trim(), v.trim()))
                .unwrap_or((comment.trim(), ""));
            if key == "extra_links" {
                for item in value.split_whitespace() {
                    let link = parse_link(item).ok_or_else(|| fail(format!("bad link '{}'", item)))?;
                    extra.push((line_no, link));
                }
            } else {
                annotations.push((key.to_owned(), value.to_owned()));
            }
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 4 {
            return Err(fail(format!("expected 4 tab-separated fields, found {}", fields.len())));
        }
        let index: usize = fields[0]
            .parse()
            .map_err(|_| fail(format!("bad index '{}'", fields[0])))?;
        if index != rows.len() + 1 {
            return Err(fail(format!("expected index {}, found {}", rows.len() + 1, index)));
        }
        let head: usize = fields[3]
            .parse()
            .map_err(|_| fail(format!("bad head '{}'", fields[3])))?;
        rows.push((fields[1].to_owned(), fields[2].to_owned()));
        if head != 0 {
            links.push(Link::new(head, index));
        }
    }
    if started {
        flush(&mut rows, &mut links, &mut annotations, &mut extra)?;
    }
    Ok(blocks)
}

fn parse_link(s: &str) -> Option<Link> {
    let (h, d) = s.split_once("->")?;
    Some(Link::new(h.parse().ok()?, d.parse().ok()?))
}

/// Indented tree: roots at column 0, each dependent two spaces deeper than
/// its head, siblings in surface order, one `index:form` per line.
pub fn render_tree(analysis: &Analysis) -> Result<String> {
    let heads = analysis.head_vector()?;
    let deps = analysis.dependents_of();
    let n = analysis.len();
    let words = analysis.sentence().words();
    let mut visited = vec![false; n + 1];
    let mut out = String::new();

    for root in (1..=n).filter(|&w| heads[w].is_none()) {
        let mut stack = vec![(root, 0usize)];
        while let Some((w, depth)) = stack.pop() {
            visited[w] = true;
            let _ = writeln!(out, "{:indent$}{}:{}", "", w, words[w - 1].form(), indent = 2 * depth);
            stack.extend(deps[w].iter().rev().map(|&d| (d, depth + 1)));
        }
    }
    match (1..=n).find(|&w| !visited[w]) {
        Some(w) => Err(Error::Cycle(w)),
        None => Ok(out),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn the_dog_barks(links: &[(usize, usize)]) -> Analysis {
        let s = Sentence::new([("the", "D"), ("dog", "N"), ("barks", "V")]).unwrap();
        Analysis::new(s, links.iter().copied()).unwrap()
    }

    #[test]
    fn table_rows() {
        let a = the_dog_barks(&[(2, 1), (3, 2)]);
        assert_eq!(write_table(&a), "1\tthe\tD\t2\n2\tdog\tN\t3\n3\tbarks\tV\t0\n");
    }

    #[test]
    fn tree_layout() {
        let a = the_dog_barks(&[(2, 1), (3, 2)]);
        assert_eq!(render_tree(&a).unwrap(), "3:barks\n  2:dog\n    1:the\n");
        let flat = the_dog_barks(&[]);
        assert_eq!(render_tree(&flat).unwrap(), "1:the\n2:dog\n3:barks\n");
        let fan = the_dog_barks(&[(2, 1), (2, 3)]);
        assert_eq!(render_tree(&fan).unwrap(), "2:dog\n  1:the\n  3:barks\n");
    }

    #[test]
    fn tree_refuses_cycles_and_multiple_heads() {
        let cyc = the_dog_barks(&[(2, 1), (1, 2)]);
        assert_eq!(render_tree(&cyc).unwrap_err().to_string(), "cycle involving word 1");
        let multi = the_dog_barks(&[(2, 1), (3, 1)]);
        assert_eq!(render_tree(&multi), Err(Error::MultipleHeads(1)));
    }

    #[test]
    fn read_back_with_annotations_and_extra_links() {
        let a = the_dog_barks(&[(2, 1), (3, 1), (1, 2)]);
        let mut text = write_table(&a);
        text.push_str("# unity: false\n\n");
        text.push_str(&write_table(&the_dog_barks(&[])));
        let blocks = read_table(&text).unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].analysis, a);
        assert_eq!(blocks[0].annotations, vec![("unity".to_owned(), "false".to_owned())]);
        assert!(blocks[1].analysis.links().is_empty());
    }

    #[test]
    fn read_errors() {
        for (text, needle) in [
            ("1\tthe\tD\n", "4 tab-separated"),
            ("2\tthe\tD\t0\n", "expected index 1"),
            ("1\tthe\tD\tx\n", "bad head"),
            ("1\tthe\tD\t5\n", "out of range"),
            ("1\tthe\tD\t1\n", "itself"),
            ("1\tthe\tD\t0\n# extra_links: 1-2\n", "bad link"),
        ] {
            let err = read_table(text).unwrap_err().to_string();
            assert!(err.contains(needle), "{:?}: {}", text, err);
        }
    }
}
