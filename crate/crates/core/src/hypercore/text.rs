use std::fmt::Write as _;

use super::{Hypergraph, Vertex};
use crate::{Error, Result};

impl Hypergraph {
    /// Canonical text form: a `d n m` header line followed by one edge per
    /// line, ids ascending and space separated, lines in lexicographic order,
    /// LF terminated.
    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 + self.edges.len() * 5);
        writeln!(out, "{} {} {}", self.d, self.n, self.edge_count()).unwrap();
        for e in self.edges() {
            let mut first = true;
            for v in e {
                if !first {
                    out.push(' ');
                }
                first = false;
                write!(out, "{v}").unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Parses the format written by [`Hypergraph::to_text`]. Edge lines may
    /// arrive unsorted; the result is canonicalized.
    pub fn from_text(text: &str) -> Result<Hypergraph> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| Error::input("empty hypergraph file"))?;
        let fields: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::input(format!("bad header {header:?}: {e}")))?;
        let [d, n, m] = fields[..] else {
            return Err(Error::input(format!("header {header:?} must be `d n m`")));
        };
        let mut edges = Vec::with_capacity(m);
        for (lineno, line) in lines {
            let edge: Vec<Vertex> = line
                .split_whitespace()
                .map(|t| t.parse::<Vertex>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::input(format!("line {}: {e}", lineno + 1)))?;
            edges.push(edge);
        }
        if edges.len() != m {
            return Err(Error::input(format!("header announces {m} edges, found {}", edges.len())));
        }
        Hypergraph::new(n, d, edges)
    }
}
