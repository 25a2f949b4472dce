use fixedbitset::FixedBitSet;

use super::{Method, OracleVerdict, MAX_CYCLE_DP};
use crate::hypercore::{Hypergraph, Vertex};
use crate::weakpaths::{Walk, WeakCycle};
use crate::{Error, Result};

struct Search<'a> {
    h: &'a Hypergraph,
    full: u32,
    // (mask, vertex) states already known to admit no completion
    dead: FixedBitSet,
    vertices: Vec<Vertex>,
    edges: Vec<u32>,
}

impl Search<'_> {
    fn state(&self, mask: u32, v: Vertex) -> usize {
        mask as usize * self.h.n() + v as usize
    }

    fn closing_edge(&self, v: Vertex) -> Option<u32> {
        self.h.incident_edges(v).iter().copied().find(|&e| self.h.edge(e as usize).contains(&0))
    }

    fn extend(&mut self, v: Vertex, mask: u32) -> bool {
        if mask == self.full {
            if let Some(e) = self.closing_edge(v) {
                self.edges.push(e);
                return true;
            }
            return false;
        }
        let id = self.state(mask, v);
        if self.dead.contains(id) {
            return false;
        }
        let h = self.h;
        for &e in h.incident_edges(v) {
            for &w in h.edge(e as usize) {
                if mask >> w & 1 == 1 {
                    continue;
                }
                self.vertices.push(w);
                self.edges.push(e);
                if self.extend(w, mask | 1 << w) {
                    return true;
                }
                self.vertices.pop();
                self.edges.pop();
            }
        }
        self.dead.insert(id);
        false
    }
}

/// Weak Hamiltonicity by backtracking over alternating vertex/edge
/// sequences of `h`, without the shadow graph. Needs `n <= 20`.
pub fn direct_weak_hamiltonian(h: &Hypergraph) -> Result<OracleVerdict> {
    let n = h.n();
    if n > MAX_CYCLE_DP {
        return Err(Error::capability(format!("direct backtracking supports n <= {MAX_CYCLE_DP}, got n = {n}")));
    }
    let no = OracleVerdict { answer: false, witness: None, method: Method::BacktrackingDirect };
    if n < 3 {
        return Ok(no);
    }
    let mut search = Search {
        h,
        full: ((1u64 << n) - 1) as u32,
        dead: FixedBitSet::with_capacity((1usize << n) * n),
        vertices: vec![0],
        edges: Vec::new(),
    };
    if !search.extend(0, 1) {
        return Ok(no);
    }
    let edges = search.edges.iter().map(|&e| h.edge(e as usize).to_vec()).collect();
    Ok(OracleVerdict {
        answer: true,
        witness: Some(Walk::Cycle(WeakCycle::new(search.vertices, edges))),
        method: Method::BacktrackingDirect,
    })
}
