//! Plain-text edge lists: a header line `n m`, then `m` lines `u v`.

use std::io::{self, BufRead, Write};

use super::{Graph, GraphError};

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize), GraphError> {
    let mut it = line.split_whitespace();
    let mut next = |what: &str| -> Result<usize, GraphError> {
        let tok = it.next().ok_or_else(|| GraphError::Parse { line: lineno, msg: format!("missing {what}") })?;
        tok.parse().map_err(|_| GraphError::Parse { line: lineno, msg: format!("bad {what} {tok:?}") })
    };
    let a = next("first field")?;
    let b = next("second field")?;
    if it.next().is_some() {
        return Err(GraphError::Parse { line: lineno, msg: "trailing fields".into() });
    }
    Ok((a, b))
}

/// Parses an edge list. Blank lines are skipped; loops, repeated or
/// reversed edges and a wrong edge count are errors.
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph, GraphError> {
    let mut header = None;
    let mut edges = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| GraphError::Parse { line: i + 1, msg: e.to_string() })?;
        if line.trim().is_empty() {
            continue;
        }
        let pair = parse_pair(&line, i + 1)?;
        if header.is_none() {
            header = Some(pair);
        } else {
            edges.push(pair);
        }
    }
    let (n, m) = header.ok_or(GraphError::Parse { line: 1, msg: "missing header".into() })?;
    if edges.len() != m {
        return Err(GraphError::EdgeCount { declared: m, found: edges.len() });
    }
    Graph::from_edges(n, edges)
}

pub fn write_edge_list<W: Write>(g: &Graph, mut w: W) -> io::Result<()> {
    writeln!(w, "{} {}", g.order(), g.size())?;
    for (u, v) in g.edges() {
        writeln!(w, "{u} {v}")?;
    }
    Ok(())
}

impl std::str::FromStr for Graph {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        read_edge_list(s.as_bytes())
    }
}
