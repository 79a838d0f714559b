//! The `.hg` text format and its JSON mirror.
//!
//! ```text
//! # optional comment lines
//! n k
//! v1 v2 ... vk
//! ...
//! ```
//!
//! Blank lines and lines starting with `#` are ignored. Edges may come in any
//! order and are canonicalised on load. A file whose first non-blank character
//! is `{` is read as JSON (`{"n": .., "k": .., "edges": [[..], ..]}`).

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{canonical_edge, Hypergraph};
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_numbers(line_no: usize, line: &str) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<usize>()
                .map_err(|_| parse_err(line_no, format!("expected a non-negative integer, found {tok:?}")))
        })
        .collect()
}

/// Parses `.hg` text.
pub fn parse_hg(text: &str) -> Result<Hypergraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_no, header) = lines.next().ok_or_else(|| parse_err(1, "missing `n k` header"))?;
    let nums = parse_numbers(header_no, header)?;
    let [n, k] = nums[..] else {
        return Err(parse_err(header_no, "header must be exactly `n k`"));
    };
    if k < 2 {
        return Err(parse_err(header_no, format!("uniformity must be at least 2, got {k}")));
    }

    let mut edges = Vec::new();
    for (no, line) in lines {
        let raw = parse_numbers(no, line)?;
        let e = canonical_edge(n, k, &raw).map_err(|e| parse_err(no, e.to_string()))?;
        edges.push((e, no));
    }
    edges.sort();
    if let Some(w) = edges.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(parse_err(
            w[0].1.max(w[1].1),
            format!("duplicate edge {:?}", w[0].0),
        ));
    }
    Ok(Hypergraph::from_valid_edges(
        n,
        k,
        edges.into_iter().map(|(e, _)| e).collect(),
    ))
}

/// Renders `h` in `.hg` form, edges in canonical order.
pub fn to_hg_string(h: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", h.n(), h.k());
    for e in h.edges() {
        let mut first = true;
        for v in e {
            if !first {
                out.push(' ');
            }
            first = false;
            write!(out, "{v}").expect("writing to a String");
        }
        out.push('\n');
    }
    out
}

/// Parses either format, choosing JSON when the text starts with `{`.
pub fn parse_any(text: &str) -> Result<Hypergraph> {
    if text.trim_start().starts_with('{') {
        Ok(serde_json::from_str(text)?)
    } else {
        parse_hg(text)
    }
}

pub fn read_hypergraph(path: impl AsRef<Path>) -> Result<Hypergraph> {
    parse_any(&fs::read_to_string(path)?)
}

/// Writes `.hg` text, or JSON when the path ends in `.json`.
pub fn write_hypergraph(h: &Hypergraph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let body = if path.extension().is_some_and(|e| e == "json") {
        serde_json::to_string(h)?
    } else {
        to_hg_string(h)
    };
    fs::write(path, body)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_single_edge() {
        let h = parse_hg("3 3\n0 1 2").unwrap();
        assert_eq!((h.n(), h.k(), h.edge_count()), (3, 3, 1));
    }

    #[test]
    fn comments_and_order_are_ignored() {
        let h = parse_hg("# a comment\n5 3\n\n4 3 2\n# mid\n2 1 0\n").unwrap();
        assert_eq!(h.edges(), &[vec![0, 1, 2], vec![2, 3, 4]]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("3 3\n0 1 1", 2),
            ("3 3\n0 1 3", 2),
            ("# c\n4 3\n0 1", 3),
            ("4 3\n0 1 2\n2 1 0", 3),
            ("4\n0 1 2", 1),
            ("4 3\n0 x 2", 2),
            ("", 1),
        ];
        for (text, line) in cases {
            match parse_hg(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let h = Hypergraph::new(7, 3, [[0, 5, 6], [1, 2, 3], [0, 1, 2]]).unwrap();
        assert_eq!(parse_hg(&to_hg_string(&h)).unwrap(), h);
    }

    #[test]
    fn detects_json() {
        let h = parse_any(r#" {"n":3,"k":3,"edges":[[2,1,0]]}"#).unwrap();
        assert_eq!(h.edges(), &[vec![0, 1, 2]]);
    }
}
