use std::collections::{BTreeMap, VecDeque};

use crate::hypercore::{Hypergraph, Vertex, VertexSet};

use super::WeakPath;

/// Endpoint closure `S(P, v₀)` of a path under Pósa rotations that fix `v₀`,
/// with one witnessing path per endpoint.
#[derive(Clone, Debug)]
pub struct PosaSet {
    origin: Vertex,
    base: WeakPath,
    endpoints: VertexSet,
    representatives: BTreeMap<Vertex, WeakPath>,
    rotations: usize,
    extension: Option<WeakPath>,
}

impl PosaSet {
    pub fn origin(&self) -> Vertex {
        self.origin
    }

    pub fn base(&self) -> &WeakPath {
        &self.base
    }

    /// `S`, which never contains the origin.
    pub fn endpoints(&self) -> &VertexSet {
        &self.endpoints
    }

    pub fn len(&self) -> usize {
        self.endpoints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.endpoints.is_empty()
    }

    pub fn representative(&self, endpoint: Vertex) -> Option<&WeakPath> {
        self.representatives.get(&endpoint)
    }

    pub fn representatives(&self) -> impl Iterator<Item = (Vertex, &WeakPath)> + '_ {
        self.representatives.iter().map(|(&v, p)| (v, p))
    }

    /// Rotations executed while building the closure.
    pub fn rotations(&self) -> usize {
        self.rotations
    }

    /// A path one longer than the base, found when some representative's
    /// endpoint has a neighbor off the path. `|N(S)| < 2|S|` is guaranteed
    /// only when this is `None`.
    pub fn extension(&self) -> Option<&WeakPath> {
        self.extension.as_ref()
    }

    pub fn is_maximal(&self) -> bool {
        self.extension.is_none()
    }

    /// `|N(S)|` in `h`.
    pub fn neighbor_count(&self, h: &Hypergraph) -> usize {
        h.neighbors(&self.endpoints).len()
    }

    /// `|N(S)| < 2|S|`.
    pub fn is_non_expanding(&self, h: &Hypergraph) -> bool {
        self.neighbor_count(h) < 2 * self.len()
    }
}

/// Closes `path` under all admissible rotations `i ≤ h - 2`, breadth first
/// over endpoints.
///
/// When some representative can be extended, the base path was not longest
/// from its first vertex and the longer path is kept as
/// [`PosaSet::extension`].
pub fn posa_set(h: &Hypergraph, path: &WeakPath) -> PosaSet {
    posa_set_with(h, path, |_, _| {})
}

/// As [`posa_set`], calling `observe(before, after)` on every rotation.
pub fn posa_set_with<F>(h: &Hypergraph, path: &WeakPath, mut observe: F) -> PosaSet
where
    F: FnMut(&WeakPath, &WeakPath),
{
    let n = h.n();
    let origin = path.start();
    let mut endpoints = VertexSet::new(n);
    let mut representatives = BTreeMap::new();
    let mut rotations = 0;
    let mut extension = None;
    let mut queue = VecDeque::new();
    if !path.is_empty() {
        endpoints.insert(path.end());
        representatives.insert(path.end(), path.clone());
        queue.push_back(path.end());
    } else if let Some(&w) = h.shadow().neighbors(origin).first() {
        let edge = h.covering_edge(origin, w).expect("shadow pair is covered");
        extension = Some(path.extended(w, edge));
    }
    let on_path = path.vertex_set(n);
    let mut pos = vec![usize::MAX; n];
    while let Some(x) = queue.pop_front() {
        let rep = representatives[&x].clone();
        if extension.is_none() {
            if let Some(&w) = h.shadow().neighbors(x).iter().find(|&&w| !on_path.contains(w)) {
                let edge = h.covering_edge(x, w).expect("shadow pair is covered");
                extension = Some(rep.extended(w, edge));
            }
        }
        for (i, &v) in rep.vertices().iter().enumerate() {
            pos[v as usize] = i;
        }
        let len = rep.len();
        for &ei in h.incident_edges(x) {
            let edge = h.edge(ei as usize);
            for &y in edge {
                let i = pos[y as usize];
                if y == x || len < 2 || i > len - 2 {
                    continue;
                }
                let rotated = rep.rotate(h, edge, i).expect("admissible rotation");
                rotations += 1;
                observe(&rep, &rotated);
                let z = rotated.end();
                if !endpoints.contains(z) {
                    endpoints.insert(z);
                    representatives.insert(z, rotated);
                    queue.push_back(z);
                }
            }
        }
    }
    PosaSet { origin, base: path.clone(), endpoints, representatives, rotations, extension }
}

/// Extends `path` until its whole rotation closure is non-extendable and
/// returns that closure.
pub fn saturated_posa_set(h: &Hypergraph, path: &WeakPath) -> PosaSet {
    let mut current = path.clone();
    loop {
        let set = posa_set(h, &current);
        match set.extension {
            None => return set,
            Some(extended) => current = extended,
        }
    }
}
