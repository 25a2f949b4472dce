use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::hypercore::{Hypergraph, Vertex, VertexSet};
use crate::{Error, Result};

pub type Edge = Vec<Vertex>;

/// First violated clause of a weak path or weak cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Empty,
    /// The cycle has fewer than three vertices.
    TooShort(usize),
    /// Number of edges does not fit the number of vertices.
    Shape {
        vertices: usize,
        edges: usize,
    },
    VertexOutOfRange(Vertex),
    RepeatedVertex(Vertex),
    /// Edge `index` (0-based) is not an edge of the host hypergraph.
    EdgeAbsent(usize),
    /// Edge `index` does not contain both of the vertices it joins.
    Coverage(usize),
    /// Strict (non-weak) Berge cycle requested but some edge repeats.
    EdgesNotDistinct,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "empty sequence"),
            Violation::TooShort(l) => write!(f, "cycle length {l} below 3"),
            Violation::Shape { vertices, edges } => {
                write!(f, "shape: {vertices} vertices with {edges} edges")
            }
            Violation::VertexOutOfRange(v) => write!(f, "vertex {v} out of range"),
            Violation::RepeatedVertex(v) => write!(f, "vertex {v} repeated"),
            Violation::EdgeAbsent(i) => write!(f, "edge {} not in hypergraph", i + 1),
            Violation::Coverage(i) => write!(f, "coverage: edge {} misses its endpoints", i + 1),
            Violation::EdgesNotDistinct => write!(f, "edges not distinct"),
        }
    }
}

/// `(v₀, e₁, v₁, …, e_h, v_h)` with distinct vertices and `{v_{k-1}, v_k} ⊆ e_k`.
/// Edges may repeat.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeakPath {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl WeakPath {
    /// Assembles a path without checking it; see [`WeakPath::validate`].
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Self {
        WeakPath { vertices, edges }
    }

    /// Length-zero path on one vertex.
    pub fn single(v: Vertex) -> Self {
        WeakPath { vertices: vec![v], edges: Vec::new() }
    }

    /// Lifts a vertex sequence that is a path in the shadow graph by giving
    /// each consecutive pair its lexicographically smallest covering edge.
    pub fn lift(h: &Hypergraph, vertices: &[Vertex]) -> Result<Self> {
        let edges = vertices
            .windows(2)
            .map(|w| {
                h.covering_edge(w[0], w[1])
                    .map(<[Vertex]>::to_vec)
                    .ok_or_else(|| Error::input(format!("no edge covers {{{}, {}}}", w[0], w[1])))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WeakPath { vertices: vertices.to_vec(), edges })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Number of edges `h`.
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn start(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn end(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    pub fn vertex_set(&self, n: usize) -> VertexSet {
        let mut s = VertexSet::new(n);
        for &v in &self.vertices {
            s.insert(v);
        }
        s
    }

    /// Same path traversed from the other end.
    pub fn reversed(&self) -> WeakPath {
        let mut vertices = self.vertices.clone();
        vertices.reverse();
        let mut edges = self.edges.clone();
        edges.reverse();
        WeakPath { vertices, edges }
    }

    pub fn validate(&self, h: &Hypergraph) -> Result<(), Violation> {
        if self.vertices.is_empty() {
            return Err(Violation::Empty);
        }
        if self.edges.len() + 1 != self.vertices.len() {
            return Err(Violation::Shape { vertices: self.vertices.len(), edges: self.edges.len() });
        }
        check_vertices(h, &self.vertices)?;
        for (k, e) in self.edges.iter().enumerate() {
            check_edge(h, e, k, self.vertices[k], self.vertices[k + 1])?;
        }
        Ok(())
    }

    /// Pósa rotation by `{v_i, v_h}` using `edge`:
    /// `(v₀, e₁, …, v_i, edge, v_h, e_h, v_{h-1}, …, e_{i+2}, v_{i+1})`.
    ///
    /// Requires `edge ∈ E(h)`, `v_i, v_h ∈ edge` and `i ≤ h - 2`; the vertex
    /// set and `v₀` are unchanged and the new endpoint is `v_{i+1}`.
    pub fn rotate(&self, h: &Hypergraph, edge: &[Vertex], i: usize) -> Result<WeakPath> {
        let len = self.len();
        if len < 2 || i > len - 2 {
            return Err(Error::input(format!("rotation index {i} needs i <= h - 2 for a path of length {len}")));
        }
        if !h.contains_edge(edge) {
            return Err(Error::input(format!("rotation edge {edge:?} is not present")));
        }
        let (vi, vh) = (self.vertices[i], self.end());
        if !edge.contains(&vi) || !edge.contains(&vh) {
            return Err(Error::input(format!("rotation edge {edge:?} must contain v_i = {vi} and v_h = {vh}")));
        }
        let mut sorted = edge.to_vec();
        sorted.sort_unstable();
        let mut vertices = Vec::with_capacity(self.vertices.len());
        vertices.extend_from_slice(&self.vertices[..=i]);
        vertices.extend(self.vertices[i + 1..].iter().rev());
        let mut edges = Vec::with_capacity(len);
        edges.extend_from_slice(&self.edges[..i]);
        edges.push(sorted);
        edges.extend(self.edges[i + 1..].iter().rev().cloned());
        Ok(WeakPath { vertices, edges })
    }

    /// Appends `v` via `edge`.
    pub fn extended(&self, v: Vertex, edge: &[Vertex]) -> WeakPath {
        let mut out = self.clone();
        out.vertices.push(v);
        out.edges.push(edge.to_vec());
        out
    }

    /// Closes the path with an edge covering `{v_h, v₀}`.
    pub fn close(self, edge: Edge) -> WeakCycle {
        let mut edges = self.edges;
        edges.push(edge);
        WeakCycle { vertices: self.vertices, edges, strict_edges: false }
    }

    pub fn to_json(&self, h: &Hypergraph) -> Value {
        walk_json("path", &self.vertices, &self.edges, false, self.validate(h))
    }
}

/// `(v₀, e₁, v₁, …, e_ℓ, v_ℓ = v₀)`, `ℓ ≥ 3`, with `v₀ … v_{ℓ-1}` distinct;
/// `vertices` stores `v₀ … v_{ℓ-1}` and `edges[k]` covers
/// `{v_k, v_{k+1 mod ℓ}}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeakCycle {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    /// When set the validator additionally demands distinct edges, i.e. a
    /// Berge cycle in the strict sense.
    pub strict_edges: bool,
}

impl WeakCycle {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Self {
        WeakCycle { vertices, edges, strict_edges: false }
    }

    /// Lifts a cyclic vertex order of the shadow graph, as [`WeakPath::lift`].
    pub fn lift(h: &Hypergraph, order: &[Vertex]) -> Result<Self> {
        let path = WeakPath::lift(h, order)?;
        let (first, last) = (order[0], *order.last().unwrap());
        let closing = h
            .covering_edge(last, first)
            .ok_or_else(|| Error::input(format!("no edge covers {{{last}, {first}}}")))?
            .to_vec();
        Ok(path.close(closing))
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Cycle length `ℓ`.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// The spanned vertex set `{v₀, …, v_{ℓ-1}}`.
    pub fn span(&self, n: usize) -> VertexSet {
        let mut s = VertexSet::new(n);
        for &v in &self.vertices {
            s.insert(v);
        }
        s
    }

    pub fn edges_distinct(&self) -> bool {
        let mut sorted = self.edges.clone();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    pub fn validate(&self, h: &Hypergraph) -> Result<(), Violation> {
        let l = self.vertices.len();
        if l == 0 {
            return Err(Violation::Empty);
        }
        if l < 3 {
            return Err(Violation::TooShort(l));
        }
        if self.edges.len() != l {
            return Err(Violation::Shape { vertices: l, edges: self.edges.len() });
        }
        check_vertices(h, &self.vertices)?;
        for (k, e) in self.edges.iter().enumerate() {
            check_edge(h, e, k, self.vertices[k], self.vertices[(k + 1) % l])?;
        }
        if self.strict_edges && !self.edges_distinct() {
            return Err(Violation::EdgesNotDistinct);
        }
        Ok(())
    }

    pub fn to_json(&self, h: &Hypergraph) -> Value {
        let mut vertices = self.vertices.clone();
        vertices.push(self.vertices[0]);
        walk_json("cycle", &vertices, &self.edges, self.strict_edges, self.validate(h))
    }
}

fn check_vertices(h: &Hypergraph, vertices: &[Vertex]) -> Result<(), Violation> {
    let mut seen = VertexSet::new(h.n());
    for &v in vertices {
        if v as usize >= h.n() {
            return Err(Violation::VertexOutOfRange(v));
        }
        if seen.contains(v) {
            return Err(Violation::RepeatedVertex(v));
        }
        seen.insert(v);
    }
    Ok(())
}

fn check_edge(h: &Hypergraph, e: &[Vertex], k: usize, a: Vertex, b: Vertex) -> Result<(), Violation> {
    if !h.contains_edge(e) {
        return Err(Violation::EdgeAbsent(k));
    }
    if !e.contains(&a) || !e.contains(&b) {
        return Err(Violation::Coverage(k));
    }
    Ok(())
}

/// Serialized form of a walk: alternating vertex ids and edge vertex lists.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WalkJson {
    pub kind: String,
    pub sequence: Vec<Value>,
    pub valid: bool,
    pub edges_distinct: bool,
    pub strict_edges: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
}

fn walk_json(
    kind: &str,
    vertices: &[Vertex],
    edges: &[Edge],
    strict_edges: bool,
    verdict: Result<(), Violation>,
) -> Value {
    let mut sequence = Vec::with_capacity(vertices.len() + edges.len());
    for (k, &v) in vertices.iter().enumerate() {
        sequence.push(Value::from(v));
        if let Some(e) = edges.get(k) {
            sequence.push(Value::from(e.clone()));
        }
    }
    let mut sorted = edges.to_vec();
    sorted.sort();
    let json = WalkJson {
        kind: kind.to_string(),
        sequence,
        valid: verdict.is_ok(),
        edges_distinct: sorted.windows(2).all(|w| w[0] != w[1]),
        strict_edges,
        violation: verdict.err().map(|v| v.to_string()),
    };
    serde_json::to_value(json).expect("walk serializes")
}

/// Parses alternating vertex/edge sequences written by `to_json`.
pub fn walk_from_json(value: &Value) -> Result<Walk> {
    let json: WalkJson = serde_json::from_value(value.clone())?;
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    for (k, item) in json.sequence.iter().enumerate() {
        if k % 2 == 0 {
            let v = item.as_u64().ok_or_else(|| Error::input(format!("position {k}: expected a vertex id")))?;
            vertices.push(v as Vertex);
        } else {
            let e: Edge =
                serde_json::from_value(item.clone()).map_err(|e| Error::input(format!("position {k}: {e}")))?;
            edges.push(e);
        }
    }
    match json.kind.as_str() {
        "path" => Ok(Walk::Path(WeakPath::new(vertices, edges))),
        "cycle" => {
            if vertices.len() < 2 || vertices.first() != vertices.last() {
                return Err(Error::input("cycle sequence must return to its first vertex"));
            }
            vertices.pop();
            let mut c = WeakCycle::new(vertices, edges);
            c.strict_edges = json.strict_edges;
            Ok(Walk::Cycle(c))
        }
        other => Err(Error::input(format!("unknown walk kind {other:?}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Walk {
    Path(WeakPath),
    Cycle(WeakCycle),
}

impl Walk {
    pub fn validate(&self, h: &Hypergraph) -> Result<(), Violation> {
        match self {
            Walk::Path(p) => p.validate(h),
            Walk::Cycle(c) => c.validate(h),
        }
    }
}
