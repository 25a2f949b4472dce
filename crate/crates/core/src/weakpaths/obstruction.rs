//! Sound certificates that no weak cycle spans `V₁(H)`.
//!
//! A vertex of shadow degree 2 forces both of its shadow edges into any
//! spanning cycle. Forced edges piling up at one vertex, or closing a cycle
//! before all targets are used, rule a spanning cycle out.

use std::fmt;

use crate::hypercore::{Hypergraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// Fewer than three non-isolated vertices.
    TooFewVertices(usize),
    /// The shadow on `V₁` is disconnected.
    Disconnected,
    /// A target vertex has fewer than two shadow neighbors.
    LowDegree(Vertex),
    /// More than two forced shadow edges meet at `vertex`.
    ForcedDegree { vertex: Vertex, forced: Vec<Vertex> },
    /// Forced shadow edges close a cycle through only `cycle` vertices.
    ForcedCycle { cycle: Vec<Vertex> },
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obstruction::TooFewVertices(k) => write!(f, "only {k} non-isolated vertices"),
            Obstruction::Disconnected => write!(f, "shadow on V1 is disconnected"),
            Obstruction::LowDegree(v) => write!(f, "vertex {v} has shadow degree below 2"),
            Obstruction::ForcedDegree { vertex, forced } => {
                write!(f, "vertex {vertex} has forced neighbors {forced:?}")
            }
            Obstruction::ForcedCycle { cycle } => {
                write!(f, "forced edges close the short cycle {cycle:?}")
            }
        }
    }
}

/// A certificate that `h` has no weak cycle spanning exactly `V₁(h)`, if one
/// of the checks above applies. `None` proves nothing.
pub fn spanning_obstruction(h: &Hypergraph) -> Option<Obstruction> {
    let g = h.shadow();
    let target = h.non_isolated_vertices();
    let k = target.len();
    if k < 3 {
        return Some(Obstruction::TooFewVertices(k));
    }
    if !g.is_connected_on(&target) {
        return Some(Obstruction::Disconnected);
    }
    let n = h.n();
    let mut forced: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for v in target.iter() {
        match g.degree(v) {
            0 | 1 => return Some(Obstruction::LowDegree(v)),
            2 => {
                for &w in g.neighbors(v) {
                    for (a, b) in [(v, w), (w, v)] {
                        if !forced[a as usize].contains(&b) {
                            forced[a as usize].push(b);
                        }
                    }
                }
            }
            _ => {}
        }
    }
    for v in target.iter() {
        let f = &forced[v as usize];
        if f.len() > 2 {
            let mut forced = f.clone();
            forced.sort_unstable();
            return Some(Obstruction::ForcedDegree { vertex: v, forced });
        }
    }
    // forced graph has maximum degree 2; a component with as many edges as
    // vertices is a cycle
    let mut seen = vec![false; n];
    for s in target.iter() {
        if seen[s as usize] || forced[s as usize].is_empty() {
            continue;
        }
        seen[s as usize] = true;
        let mut stack = vec![s];
        let mut members = Vec::new();
        let mut degree_sum = 0;
        while let Some(v) = stack.pop() {
            members.push(v);
            degree_sum += forced[v as usize].len();
            for &w in &forced[v as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    stack.push(w);
                }
            }
        }
        if degree_sum / 2 == members.len() && members.len() < k {
            members.sort_unstable();
            return Some(Obstruction::ForcedCycle { cycle: members });
        }
    }
    None
}
