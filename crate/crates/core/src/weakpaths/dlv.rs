//! Long weak paths by splitting the vertex set in half, finding long paths
//! in two projection graphs and bridging them with one hyperedge.

use std::collections::HashMap;

use rand::Rng;

use crate::hypercore::{Hypergraph, ShadowGraph, Vertex, VertexSet};
use crate::{Error, Result};

use super::search::{default_budget, graph_search, Goal};
use super::WeakPath;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Half {
    /// Labels `0..⌊n/2⌋` are the vertices themselves.
    First,
    /// Label `i` is vertex `⌈n/2⌉ + i`.
    Second,
}

/// Graph on `⌊n/2⌋` labels: `{i, j}` is an edge iff some hyperedge contains
/// both and no other vertex of the same block.
#[derive(Clone, Debug)]
pub struct ProjectionGraph {
    pub half: Half,
    graph: ShadowGraph,
    offset: Vertex,
    witness: HashMap<(Vertex, Vertex), u32>,
}

impl ProjectionGraph {
    pub fn build(h: &Hypergraph, half: Half) -> Self {
        let n = h.n();
        let size = (n / 2) as Vertex;
        let offset = match half {
            Half::First => 0,
            Half::Second => n.div_ceil(2) as Vertex,
        };
        let mut witness = HashMap::new();
        for (ei, e) in h.edges().enumerate() {
            let mut inside = e.iter().filter(|&&v| v >= offset && v < offset + size);
            if let (Some(&a), Some(&b), None) = (inside.next(), inside.next(), inside.next()) {
                witness.entry((a - offset, b - offset)).or_insert(ei as u32);
            }
        }
        let graph = ShadowGraph::from_pairs(size as usize, witness.keys().copied());
        ProjectionGraph { half, graph, offset, witness }
    }

    pub fn graph(&self) -> &ShadowGraph {
        &self.graph
    }

    pub fn vertex(&self, label: Vertex) -> Vertex {
        label + self.offset
    }

    /// Lexicographically first hyperedge witnessing a projection edge.
    pub fn witness_edge<'h>(&self, h: &'h Hypergraph, a: Vertex, b: Vertex) -> Option<&'h [Vertex]> {
        let key = (a.min(b), a.max(b));
        self.witness.get(&key).map(|&ei| h.edge(ei as usize))
    }

    /// Lifts a label path to a weak path of `h` on the block's vertices.
    fn lift(&self, h: &Hypergraph, labels: &[Vertex]) -> WeakPath {
        let vertices = labels.iter().map(|&l| self.vertex(l)).collect();
        let edges = labels.windows(2).map(|w| self.witness_edge(h, w[0], w[1]).unwrap().to_vec()).collect();
        WeakPath::new(vertices, edges)
    }
}

#[derive(Clone, Debug)]
pub struct DlvResult {
    pub path: WeakPath,
    /// False when no hyperedge joined the two windows; `path` is then the
    /// longer half-path.
    pub bridged: bool,
    pub first_half: usize,
    pub second_half: usize,
}

/// `⌈n / ln n⌉`.
pub fn default_window(n: usize) -> usize {
    (n as f64 / (n as f64).ln()).ceil() as usize
}

/// Split-and-bridge long path in a single hypergraph.
pub fn dlv_long_path<R: Rng>(h: &Hypergraph, window: usize, rng: &mut R) -> Result<DlvResult> {
    dlv_long_path_split(h, h, h, window, rng)
}

/// Path in `first`'s upper projection, path in `second`'s lower projection,
/// bridged by an edge of `bridge`. With three independent `H_d(n, p/3)`
/// inputs the union is distributed as `H_d(n, 1-(1-p/3)^3)`.
pub fn dlv_long_path_split<R: Rng>(
    first: &Hypergraph,
    second: &Hypergraph,
    bridge: &Hypergraph,
    window: usize,
    rng: &mut R,
) -> Result<DlvResult> {
    let n = first.n();
    if n < 4 {
        return Err(Error::input(format!("split-and-bridge needs n >= 4, got {n}")));
    }
    if second.n() != n || bridge.n() != n {
        return Err(Error::input("all three hypergraphs must share n"));
    }
    let g1 = ProjectionGraph::build(first, Half::First);
    let g2 = ProjectionGraph::build(second, Half::Second);
    let p1 = g1.lift(first, &long_label_path(g1.graph(), rng));
    let p2 = g2.lift(second, &long_label_path(g2.graph(), rng));
    let (first_half, second_half) = (p1.len(), p2.len());

    let window = window.max(1);
    let tail = &p1.vertices()[p1.vertices().len().saturating_sub(window)..];
    let head = &p2.vertices()[..window.min(p2.vertices().len())];
    let head_pos: HashMap<Vertex, usize> = head.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let tail_offset = p1.vertices().len() - tail.len();
    // maximize (index of a in p1) + (remaining length of p2 after b)
    let mut choice: Option<(usize, usize, u32)> = None;
    for (k, &a) in tail.iter().enumerate() {
        let ia = tail_offset + k;
        for &ei in bridge.incident_edges(a) {
            for &b in bridge.edge(ei as usize) {
                if let Some(&ib) = head_pos.get(&b) {
                    let better = match choice {
                        None => true,
                        Some((ja, jb, _)) => ia + (p2.len() - ib) > ja + (p2.len() - jb),
                    };
                    if better {
                        choice = Some((ia, ib, ei));
                    }
                }
            }
        }
    }
    let Some((ia, ib, ei)) = choice else {
        let path = if p1.len() >= p2.len() { p1 } else { p2 };
        return Ok(DlvResult { path, bridged: false, first_half, second_half });
    };
    let mut vertices = p1.vertices()[..=ia].to_vec();
    vertices.extend_from_slice(&p2.vertices()[ib..]);
    let mut edges = p1.edges()[..ia].to_vec();
    edges.push(bridge.edge(ei as usize).to_vec());
    edges.extend_from_slice(&p2.edges()[ib..]);
    Ok(DlvResult { path: WeakPath::new(vertices, edges), bridged: true, first_half, second_half })
}

/// Longest path found by graph rotation-extension on the largest component.
fn long_label_path<R: Rng>(g: &ShadowGraph, rng: &mut R) -> Vec<Vertex> {
    let Some(giant) = g.components().into_iter().max_by_key(Vec::len) else {
        return Vec::new();
    };
    let target = VertexSet::from_vertices(g.n(), giant.iter().copied()).expect("labels in range");
    let budget = default_budget(giant.len()) / 5;
    graph_search(g, &target, Goal::Path, budget, rng).best
}
