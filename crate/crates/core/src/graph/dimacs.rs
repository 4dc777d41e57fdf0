//! DIMACS `.col` / `.clq` reader and writer.
//!
//! ```text
//! c comment
//! p edge <n> <m>
//! e <u> <v>
//! ```
//!
//! Vertices are 1-based in the file. The format word after `p` is not checked
//! (`edge`, `col` and `clique` all occur in the benchmark sets) and the
//! declared edge count is informational: duplicate lines and reversed
//! orientations are collapsed.

use std::fmt::Write as _;

use super::Graph;
use crate::{Error, Result};

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut n = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let line = raw.trim();
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            None | Some("c") => {}
            Some("p") => {
                if n.is_some() {
                    return Err(err("duplicate problem line".into()));
                }
                let _format = tokens.next().ok_or_else(|| err("missing format in problem line".into()))?;
                let count = tokens
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| err(format!("malformed problem line `{line}`")))?;
                tokens
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| err(format!("malformed problem line `{line}`")))?;
                if count == 0 {
                    return Err(err("graph must have at least one vertex".into()));
                }
                n = Some(count);
            }
            Some("e") => {
                let n = n.ok_or_else(|| err("edge line before problem line".into()))?;
                let mut endpoint = || {
                    tokens
                        .next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or_else(|| err(format!("malformed edge line `{line}`")))
                };
                let (u, v) = (endpoint()?, endpoint()?);
                for x in [u, v] {
                    if x == 0 || x > n {
                        return Err(err(format!("vertex {x} outside 1..={n}")));
                    }
                }
                if u == v {
                    return Err(err(format!("self-loop at vertex {u}")));
                }
                edges.push((u - 1, v - 1));
            }
            // Some benchmark files carry `n <v> <weight>` vertex lines; they do not affect structure.
            Some("n") => {}
            Some(other) => return Err(err(format!("unknown line type `{other}`"))),
        }
    }
    let n = n.ok_or(Error::Parse { line: 0, msg: "missing problem line".into() })?;
    Graph::from_edges(n, edges)
}

pub fn write_dimacs(g: &Graph, comments: &[&str]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let _ = writeln!(out, "p edge {} {}", g.vertex_count(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "e {} {}", u + 1, v + 1);
    }
    out
}
