use std::collections::VecDeque;

use super::{Vertex, VertexSet};

/// Simple undirected graph on `0..n`, stored as sorted adjacency lists.
///
/// Built from a hypergraph it is the 2-uniform projection: `u ~ v` iff some
/// hyperedge contains both. Because weak cycles may reuse hyperedges, a weak
/// cycle spanning `W` exists iff this graph has a cycle through exactly `W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShadowGraph {
    adjacency: Vec<Vec<Vertex>>,
}

impl ShadowGraph {
    /// Builds a graph from an arbitrary list of pairs. Loops are dropped and
    /// duplicate pairs collapse.
    pub fn from_pairs<I>(n: usize, pairs: I) -> Self
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in pairs {
            if u != v {
                adjacency[u as usize].push(v);
                adjacency[v as usize].push(u);
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        ShadowGraph { adjacency }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let u = u as Vertex;
            list.iter().copied().filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    /// Neighbor bitmasks for graphs with at most 64 vertices.
    pub fn masks(&self) -> Option<Vec<u64>> {
        if self.n() > 64 {
            return None;
        }
        Some(self.adjacency.iter().map(|list| list.iter().fold(0u64, |m, &v| m | (1u64 << v))).collect())
    }

    /// Connected components in order of their smallest vertex; each component
    /// is sorted ascending.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start as Vertex);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in self.neighbors(v) {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Whether the subgraph induced on `w` is connected. The empty set counts
    /// as connected.
    pub fn is_connected_on(&self, w: &VertexSet) -> bool {
        let Some(start) = w.iter().next() else {
            return true;
        };
        let mut seen = VertexSet::new(self.n());
        seen.insert(start);
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &x in self.neighbors(v) {
                if w.contains(x) && !seen.contains(x) {
                    seen.insert(x);
                    reached += 1;
                    stack.push(x);
                }
            }
        }
        reached == w.len()
    }
}
