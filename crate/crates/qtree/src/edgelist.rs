//! Plain-text edge lists.
//!
//! ```text
//! # comments and blank lines are ignored
//! p 4
//! 0 1
//! 1 2
//! 1 3
//! ```
//!
//! Vertices are `0..p`. Each further line holds one edge.

use std::collections::BTreeSet;
use std::fmt::Write;

use qtree_core::{Graph, Tree};

use crate::error::{CliError, CliResult};

fn bad(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("line {line}: {msg}"))
}

pub fn parse_graph(text: &str) -> CliResult<Graph> {
    let mut p: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let Some(count) = p else {
            match fields.as_slice() {
                ["p", n] => {
                    let n: usize = n
                        .parse()
                        .map_err(|_| bad(line_no, format!("bad vertex count {n:?}")))?;
                    p = Some(n);
                    continue;
                }
                _ => return Err(bad(line_no, "expected header `p <vertex count>`")),
            }
        };
        let [u, v] = fields.as_slice() else {
            return Err(bad(line_no, "expected two vertex indices"));
        };
        let parse = |s: &str| -> CliResult<usize> {
            let x: usize = s
                .parse()
                .map_err(|_| bad(line_no, format!("bad vertex {s:?}")))?;
            if x >= count {
                return Err(bad(line_no, format!("vertex {x} out of range 0..{count}")));
            }
            Ok(x)
        };
        let (u, v) = (parse(u)?, parse(v)?);
        if u == v {
            return Err(bad(line_no, format!("loop at vertex {u}")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(bad(line_no, format!("duplicate edge {u} {v}")));
        }
        edges.push((u, v));
    }
    let p = p.ok_or_else(|| CliError::Input("empty edge list".into()))?;
    Ok(Graph::new(p, edges)?)
}

pub fn parse_tree(text: &str) -> CliResult<Tree> {
    Ok(Tree::try_from(parse_graph(text)?)?)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("p {}\n", g.vertex_count());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_star() {
        let t = parse_tree("# S3\np 4\n0 1\n0 2\n\n0 3 # last\n").unwrap();
        assert_eq!(t.pendant_count(), 3);
        assert_eq!(write_graph(&t), "p 4\n0 1\n0 2\n0 3\n");
        assert_eq!(parse_tree(&write_graph(&t)).unwrap(), t);
    }

    #[test]
    fn rejects_bad_input() {
        for text in [
            "",
            "0 1\n",
            "p 3\n0 1\n1 0\n",
            "p 3\n0 3\n",
            "p 3\n1 1\n",
            "p 3\n0 1 2\n",
            "p x\n",
            "p 4\n0 1\n2 3\n",
        ] {
            assert!(
                matches!(parse_graph(text), Err(CliError::Input(_))),
                "{text:?}"
            );
        }
        assert!(parse_tree("p 3\n0 1\n1 2\n").is_ok());
    }
}
