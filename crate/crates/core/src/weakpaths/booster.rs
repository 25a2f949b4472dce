use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::hypercore::{binomial, for_each_combination, Hypergraph, Vertex};

use super::posa::{posa_set, PosaSet};
use super::{Edge, WeakCycle, WeakPath};

/// Absent edges whose addition closes a longest path into a weak cycle one
/// longer than the path.
#[derive(Clone, Debug)]
pub struct BoosterSet {
    path_len: usize,
    /// Edge → `(w, t)`: the edge joins the two ends of a rotated path from
    /// `w` to `t`.
    edges: BTreeMap<Edge, (Vertex, Vertex)>,
    second_level: BTreeMap<Vertex, PosaSet>,
    first_level: PosaSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoosterError {
    /// The path is too short to close into a cycle (`h < 2`).
    TooShort(usize),
    /// A rotation closure can be extended, so the path was not longest.
    NotMaximal(WeakPath),
    /// `H` already has a weak cycle of length `h + 1`.
    CycleExists(WeakCycle),
}

impl BoosterSet {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.keys()
    }

    pub fn path_len(&self) -> usize {
        self.path_len
    }

    /// `S(P, v₀)`.
    pub fn first_level(&self) -> &PosaSet {
        &self.first_level
    }

    /// `S(P_w, w)` for each `w ∈ S(P, v₀)`.
    pub fn second_level(&self) -> impl Iterator<Item = (Vertex, &PosaSet)> + '_ {
        self.second_level.iter().map(|(&w, s)| (w, s))
    }

    /// The weak cycle of length `h + 1` created by adding `edge`; it is valid
    /// in `H + edge`.
    pub fn cycle_for(&self, edge: &[Vertex]) -> Option<WeakCycle> {
        let &(w, t) = self.edges.get(edge)?;
        let path = self.second_level[&w].representative(t)?.clone();
        Some(path.close(edge.to_vec()))
    }
}

/// For every endpoint `w` of `S(P, v₀)` with representative `P_w`, computes
/// `S_w = S(P_w, w)` and collects each absent d-set containing `w` and some
/// vertex of `S_w`.
///
/// `path` must be a longest weak path of `h` and `h` must have no weak cycle
/// of length `|path| + 1`; violations found along the way are reported.
pub fn booster_edges(h: &Hypergraph, path: &WeakPath) -> Result<BoosterSet, BoosterError> {
    let len = path.len();
    if len < 2 {
        return Err(BoosterError::TooShort(len));
    }
    let n = h.n();
    let d = h.d();
    let first_level = maximal(posa_set(h, path))?;
    let mut edges = BTreeMap::new();
    let mut second_level = BTreeMap::new();
    for (w, rep) in first_level.representatives() {
        let from_w = maximal(posa_set(h, &rep.reversed()))?;
        for t in from_w.endpoints().iter() {
            if let Some(e) = h.covering_edge(w, t) {
                let closed = from_w.representative(t).unwrap().clone().close(e.to_vec());
                return Err(BoosterError::CycleExists(closed));
            }
            let others: Vec<Vertex> = (0..n as Vertex).filter(|&v| v != w && v != t).collect();
            for_each_combination(others.len(), d - 2, |c| {
                let mut e: Edge = c.iter().map(|&i| others[i as usize]).collect();
                e.push(w);
                e.push(t);
                e.sort_unstable();
                edges.entry(e).or_insert((w, t));
            });
        }
        second_level.insert(w, from_w);
    }
    Ok(BoosterSet { path_len: len, edges, second_level, first_level })
}

fn maximal(set: PosaSet) -> Result<PosaSet, BoosterError> {
    match set.extension() {
        Some(longer) => Err(BoosterError::NotMaximal(longer.clone())),
        None => Ok(set),
    }
}

/// `u (C(n-1, d-1) - C(n-1-u, d-1)) / d`, exactly.
pub fn booster_lower_bound(n: usize, d: usize, u: usize) -> Ratio<u128> {
    assert!(u < n.max(1), "u = {u} must lie in [0, n - 1]");
    let all = binomial(n as u64 - 1, d as u64 - 1).expect("binomial fits");
    let avoid = binomial((n - 1 - u) as u64, d as u64 - 1).expect("binomial fits");
    Ratio::new(u as u128 * (all - avoid), d as u128)
}
