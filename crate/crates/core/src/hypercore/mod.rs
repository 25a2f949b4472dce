//! d-uniform hypergraphs on the labelled vertex set `0..n`.
//!
//! Edges are kept in canonical form: every edge is sorted ascending and the
//! edge list is sorted lexicographically. Two hypergraphs are equal iff their
//! `(n, d, edges)` triples are equal, and [`Hypergraph::to_text`] is
//! bit-exact for equal hypergraphs.

mod shadow;
mod text;
mod vertex_set;

use std::sync::OnceLock;

pub use shadow::ShadowGraph;
pub use vertex_set::VertexSet;

use crate::{Error, Result};

pub type Vertex = u32;

#[derive(Clone, Debug)]
pub struct Hypergraph {
    n: usize,
    d: usize,
    /// Flat storage, `d` ids per edge.
    edges: Vec<Vertex>,
    /// Edge indices incident to each vertex, ascending (hence lexicographic).
    incidence: Vec<Vec<u32>>,
    shadow: OnceLock<ShadowGraph>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.d == other.d && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl Hypergraph {
    /// Validates and canonicalizes an edge list.
    ///
    /// Every edge must have exactly `d` distinct vertices in `0..n`, and no
    /// edge may appear twice.
    pub fn new<I, E>(n: usize, d: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: AsRef<[Vertex]>,
    {
        if d < 2 {
            return Err(Error::input(format!("uniformity d = {d} must be at least 2")));
        }
        let mut list: Vec<Vec<Vertex>> = Vec::new();
        for e in edges {
            let e = e.as_ref();
            if e.len() != d {
                return Err(Error::input(format!("edge {e:?} has {} vertices, expected {d}", e.len())));
            }
            let mut e = e.to_vec();
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::input(format!("edge {e:?} repeats a vertex")));
            }
            if let Some(&v) = e.last() {
                if v as usize >= n {
                    return Err(Error::input(format!("edge {e:?} has vertex {v} outside 0..{n}")));
                }
            }
            list.push(e);
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::input(format!("edge {:?} appears twice", w[0])));
        }
        Ok(Self::from_canonical(n, d, list.concat()))
    }

    /// Edgeless hypergraph.
    pub fn empty(n: usize, d: usize) -> Self {
        Self::from_canonical(n, d, Vec::new())
    }

    /// Caller guarantees canonical, duplicate-free flat storage.
    pub(crate) fn from_canonical(n: usize, d: usize, edges: Vec<Vertex>) -> Self {
        debug_assert!(d >= 2 && edges.len().is_multiple_of(d));
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in edges.chunks_exact(d).enumerate() {
            for &v in e {
                incidence[v as usize].push(i as u32);
            }
        }
        Hypergraph { n, d, edges, incidence, shadow: OnceLock::new() }
    }

    /// Sorts each edge and the edge list; drops duplicates.
    pub(crate) fn from_unsorted_distinct(n: usize, d: usize, mut edges: Vec<Vec<Vertex>>) -> Self {
        for e in &mut edges {
            e.sort_unstable();
        }
        edges.sort_unstable();
        edges.dedup();
        Self::from_canonical(n, d, edges.concat())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len() / self.d
    }

    pub fn edge(&self, index: usize) -> &[Vertex] {
        &self.edges[index * self.d..(index + 1) * self.d]
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[Vertex]> + '_ {
        self.edges.chunks_exact(self.d)
    }

    pub fn contains_edge(&self, edge: &[Vertex]) -> bool {
        self.edge_index(edge).is_some()
    }

    fn edge_index(&self, edge: &[Vertex]) -> Option<usize> {
        if edge.len() != self.d {
            return None;
        }
        let mut sorted = edge.to_vec();
        sorted.sort_unstable();
        let m = self.edge_count();
        let (mut lo, mut hi) = (0, m);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.edge(mid).cmp(sorted.as_slice()) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if (v as usize) < self.n {
            Ok(())
        } else {
            Err(Error::input(format!("vertex {v} outside 0..{}", self.n)))
        }
    }

    /// Number of edges containing `v`.
    pub fn degree(&self, v: Vertex) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.incidence[v as usize].len())
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.incidence.iter().map(Vec::len).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Indices of edges containing `v`, in lexicographic edge order.
    pub fn incident_edges(&self, v: Vertex) -> &[u32] {
        &self.incidence[v as usize]
    }

    /// `V₀(H)`: vertices of degree zero.
    pub fn isolated_vertices(&self) -> VertexSet {
        let mut set = VertexSet::new(self.n);
        for (v, inc) in self.incidence.iter().enumerate() {
            if inc.is_empty() {
                set.insert(v as Vertex);
            }
        }
        set
    }

    /// `V₁(H)`: vertices lying in at least one edge.
    pub fn non_isolated_vertices(&self) -> VertexSet {
        self.isolated_vertices().complement()
    }

    pub fn isolated_count(&self) -> usize {
        self.incidence.iter().filter(|inc| inc.is_empty()).count()
    }

    /// `N(V)`: vertices outside `V` sharing an edge with some member of `V`.
    pub fn neighbors(&self, set: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new(self.n);
        for v in set.iter() {
            for &ei in &self.incidence[v as usize] {
                for &w in self.edge(ei as usize) {
                    if !set.contains(w) {
                        out.insert(w);
                    }
                }
            }
        }
        out
    }

    /// The 2-uniform projection, built on first use and cached.
    pub fn shadow(&self) -> &ShadowGraph {
        self.shadow.get_or_init(|| {
            let d = self.d;
            let pairs = self.edges().flat_map(move |e| (0..d).flat_map(move |i| (i + 1..d).map(move |j| (e[i], e[j]))));
            ShadowGraph::from_pairs(self.n, pairs)
        })
    }

    /// Edges entirely inside `w`. Vertex labels are kept, so the result still
    /// lives on `0..n`.
    pub fn induced(&self, w: &VertexSet) -> Hypergraph {
        let edges: Vec<Vertex> = self.edges().filter(|e| e.iter().all(|&v| w.contains(v))).flatten().copied().collect();
        Self::from_canonical(self.n, self.d, edges)
    }

    /// Induced hypergraph on `w` with vertices relabelled `0..|w|` in
    /// ascending order of their original ids.
    pub fn induced_compact(&self, w: &VertexSet) -> Hypergraph {
        let mut relabel = vec![Vertex::MAX; self.n];
        for (i, v) in w.iter().enumerate() {
            relabel[v as usize] = i as Vertex;
        }
        let edges: Vec<Vertex> = self
            .edges()
            .filter(|e| e.iter().all(|&v| w.contains(v)))
            .flat_map(|e| e.iter().map(|&v| relabel[v as usize]))
            .collect();
        Self::from_canonical(w.len(), self.d, edges)
    }

    /// Connected components of the shadow graph; isolated vertices form
    /// singleton components.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.shadow().components()
    }

    /// Number of components with at least two vertices.
    pub fn nontrivial_component_count(&self) -> usize {
        self.components().iter().filter(|c| c.len() > 1).count()
    }

    pub fn is_connected_on(&self, w: &VertexSet) -> bool {
        self.shadow().is_connected_on(w)
    }

    /// Lexicographically smallest edge containing both `u` and `v`.
    pub fn covering_edge(&self, u: Vertex, v: Vertex) -> Option<&[Vertex]> {
        let (a, b) = if self.incidence[u as usize].len() <= self.incidence[v as usize].len() { (u, v) } else { (v, u) };
        self.incidence[a as usize].iter().map(|&ei| self.edge(ei as usize)).find(|e| e.binary_search(&b).is_ok())
    }

    /// Copy of `self` with one more edge.
    pub fn with_edge(&self, edge: &[Vertex]) -> Result<Hypergraph> {
        let mut list: Vec<Vec<Vertex>> = self.edges().map(<[Vertex]>::to_vec).collect();
        list.push(edge.to_vec());
        Hypergraph::new(self.n, self.d, list)
    }

    /// Edge union of two hypergraphs on the same `(n, d)`.
    pub fn union(&self, other: &Hypergraph) -> Result<Hypergraph> {
        if self.n != other.n || self.d != other.d {
            return Err(Error::input(format!(
                "cannot overlay (n, d) = ({}, {}) with ({}, {})",
                self.n, self.d, other.n, other.d
            )));
        }
        let d = self.d;
        let (mut i, mut j) = (0, 0);
        let (a, b) = (self.edge_count(), other.edge_count());
        let mut out = Vec::with_capacity(self.edges.len() + other.edges.len());
        while i < a || j < b {
            let take = if i == a {
                std::cmp::Ordering::Greater
            } else if j == b {
                std::cmp::Ordering::Less
            } else {
                self.edge(i).cmp(other.edge(j))
            };
            match take {
                std::cmp::Ordering::Less => {
                    out.extend_from_slice(self.edge(i));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.extend_from_slice(other.edge(j));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.extend_from_slice(self.edge(i));
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(Self::from_canonical(self.n, d, out))
    }

    /// Complete d-uniform hypergraph on `0..n`.
    pub fn complete(n: usize, d: usize) -> Self {
        let mut edges = Vec::new();
        for_each_combination(n, d, |c| edges.extend_from_slice(c));
        Self::from_canonical(n, d, edges)
    }
}

/// Calls `f` on every ascending `k`-subset of `0..n`, in lexicographic order.
pub fn for_each_combination<F: FnMut(&[Vertex])>(n: usize, k: usize, mut f: F) {
    if k > n {
        return;
    }
    if k == 0 {
        f(&[]);
        return;
    }
    let mut c: Vec<Vertex> = (0..k as Vertex).collect();
    loop {
        f(&c);
        let mut i = k;
        while i > 0 && c[i - 1] as usize == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        i -= 1;
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// Binomial coefficient, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}
