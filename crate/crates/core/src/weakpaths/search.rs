//! Rotation-extension search for long paths and spanning cycles.
//!
//! The graph-level engine works on any [`ShadowGraph`] restricted to a target
//! vertex set. It grows a path greedily, rotates at stalls, closes the path
//! when its ends meet, and breaks a non-spanning cycle open at a vertex that
//! sees outside it.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hypercore::{Hypergraph, ShadowGraph, Vertex, VertexSet};

use super::{WeakCycle, WeakPath};

const OFF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct SearchConfig {
    /// Maximum number of rotations; `None` means `50 n ln n`.
    pub budget: Option<u64>,
    pub seed: u64,
}

/// `50 n ln n`, at least 100.
pub fn default_budget(n: usize) -> u64 {
    let n = n.max(2) as f64;
    ((50.0 * n * n.ln()).ceil() as u64).max(100)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// A validated weak cycle spanning exactly `V₁(H)`.
    Cycle(WeakCycle),
    /// No spanning cycle found within budget; carries the longest path seen.
    Incomplete { best: WeakPath },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub rotations: u64,
    /// The shadow graph on `V₁(H)` is disconnected, so no spanning cycle
    /// exists at all.
    pub disconnected: bool,
}

impl SearchReport {
    pub fn cycle(&self) -> Option<&WeakCycle> {
        match &self.outcome {
            SearchOutcome::Cycle(c) => Some(c),
            SearchOutcome::Incomplete { .. } => None,
        }
    }
}

/// Looks for a weak cycle spanning the non-isolated vertices of `h`.
///
/// Any returned cycle has passed validation and spans exactly `V₁(h)`.
pub fn rotation_extension_search(h: &Hypergraph, config: &SearchConfig) -> SearchReport {
    let target = h.non_isolated_vertices();
    let budget = config.budget.unwrap_or_else(|| default_budget(h.n()));
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let result = graph_search(h.shadow(), &target, Goal::Cycle, budget, &mut rng);
    let lift_best = |best: &[Vertex]| {
        if best.is_empty() {
            WeakPath::single(target.iter().next().unwrap_or(0))
        } else {
            WeakPath::lift(h, best).expect("search path lives in the shadow")
        }
    };
    let outcome = match &result.cycle {
        Some(order) => {
            let cycle = WeakCycle::lift(h, order).expect("search cycle lives in the shadow");
            if cycle.validate(h).is_ok() && cycle.span(h.n()) == target {
                SearchOutcome::Cycle(cycle)
            } else {
                debug_assert!(false, "search produced an invalid cycle");
                SearchOutcome::Incomplete { best: lift_best(&result.best) }
            }
        }
        None => SearchOutcome::Incomplete { best: lift_best(&result.best) },
    };
    SearchReport { outcome, rotations: result.rotations, disconnected: result.disconnected }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Goal {
    /// Hamilton cycle on the target.
    Cycle,
    /// Longest path inside the target, stopping early at a Hamilton path.
    Path,
}

#[derive(Clone, Debug)]
pub(crate) struct GraphSearchResult {
    pub cycle: Option<Vec<Vertex>>,
    pub best: Vec<Vertex>,
    pub rotations: u64,
    pub disconnected: bool,
}

struct PathState {
    seq: Vec<Vertex>,
    pos: Vec<u32>,
}

impl PathState {
    fn new(n: usize, start: Vertex) -> Self {
        let mut pos = vec![OFF; n];
        pos[start as usize] = 0;
        PathState { seq: vec![start], pos }
    }

    fn on_path(&self, v: Vertex) -> bool {
        self.pos[v as usize] != OFF
    }

    fn push(&mut self, v: Vertex) {
        self.pos[v as usize] = self.seq.len() as u32;
        self.seq.push(v);
    }

    fn reverse_from(&mut self, from: usize) {
        self.seq[from..].reverse();
        for k in from..self.seq.len() {
            self.pos[self.seq[k] as usize] = k as u32;
        }
    }

    fn rotate_left(&mut self, by: usize) {
        self.seq.rotate_left(by);
        for (k, &v) in self.seq.iter().enumerate() {
            self.pos[v as usize] = k as u32;
        }
    }

    fn clear(&mut self) {
        for &v in &self.seq {
            self.pos[v as usize] = OFF;
        }
        self.seq.clear();
    }

    fn start(&self) -> Vertex {
        self.seq[0]
    }

    fn end(&self) -> Vertex {
        *self.seq.last().unwrap()
    }
}

struct Engine<'a, R> {
    g: &'a ShadowGraph,
    target: &'a VertexSet,
    goal: Goal,
    size: usize,
    rng: &'a mut R,
    path: PathState,
    rotations: u64,
    scratch: Vec<usize>,
}

impl<R: Rng> Engine<'_, R> {
    fn in_target(&self, v: Vertex) -> bool {
        self.target.contains(v)
    }

    fn free_degree(&self, v: Vertex) -> usize {
        self.g.neighbors(v).iter().filter(|&&w| self.in_target(w) && !self.path.on_path(w)).count()
    }

    /// Off-path neighbor of `x` with the fewest off-path neighbors itself.
    fn best_extension(&self, x: Vertex) -> Option<Vertex> {
        self.g
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&w| self.in_target(w) && !self.path.on_path(w))
            .min_by_key(|&w| self.free_degree(w))
    }

    fn has_free_neighbor(&self, v: Vertex) -> bool {
        self.g.neighbors(v).iter().any(|&w| self.in_target(w) && !self.path.on_path(w))
    }

    fn closes(&self) -> bool {
        self.path.seq.len() >= 3 && self.g.has_edge(self.path.end(), self.path.start())
    }

    /// Breaks the closed path open at a vertex with an outside neighbor.
    /// Returns false when no such vertex exists.
    fn break_cycle(&mut self) -> bool {
        let len = self.path.seq.len();
        for j in 0..len {
            let v = self.path.seq[j];
            if let Some(w) = self.best_extension(v) {
                self.path.rotate_left(j + 1);
                self.path.push(w);
                return true;
            }
        }
        false
    }

    /// One rotation at the end of the path. Prefers a rotation whose new
    /// endpoint can extend or close; otherwise picks uniformly.
    fn rotate(&mut self) -> bool {
        let len = self.path.seq.len();
        if len < 3 {
            return false;
        }
        let x = self.path.end();
        self.scratch.clear();
        for &y in self.g.neighbors(x) {
            let i = self.path.pos[y as usize];
            if i != OFF && (i as usize) + 2 < len {
                self.scratch.push(i as usize);
            }
        }
        if self.scratch.is_empty() {
            return false;
        }
        let full = len == self.size;
        let start = self.path.start();
        let good = self.scratch.iter().copied().find(|&i| {
            let z = self.path.seq[i + 1];
            if full || self.goal == Goal::Path {
                self.goal == Goal::Cycle && self.g.has_edge(z, start)
            } else {
                self.has_free_neighbor(z) || self.g.has_edge(z, start)
            }
        });
        let i = match good {
            Some(i) if self.rng.random_bool(0.9) => i,
            _ => *self.scratch.choose(self.rng).unwrap(),
        };
        self.path.reverse_from(i + 1);
        self.rotations += 1;
        true
    }
}

/// Randomized rotation-extension on `g` restricted to `target`.
pub(crate) fn graph_search<R: Rng>(
    g: &ShadowGraph,
    target: &VertexSet,
    goal: Goal,
    budget: u64,
    rng: &mut R,
) -> GraphSearchResult {
    let size = target.len();
    let members = target.to_vec();
    let empty = GraphSearchResult { cycle: None, best: Vec::new(), rotations: 0, disconnected: false };
    if size == 0 {
        return empty;
    }
    let disconnected = !g.is_connected_on(target);
    if goal == Goal::Cycle && (size < 3 || disconnected) {
        return GraphSearchResult { disconnected, best: vec![members[0]], ..empty };
    }
    let first =
        *members.iter().min_by_key(|&&v| g.neighbors(v).iter().filter(|&&w| target.contains(w)).count()).unwrap();
    let mut engine =
        Engine { g, target, goal, size, rng, path: PathState::new(g.n(), first), rotations: 0, scratch: Vec::new() };
    let stall_limit = (4 * size as u64).max(200);
    let mut best: Vec<Vertex> = Vec::new();
    let mut last_len = 0;
    let mut since_gain = 0u64;
    let mut flips = 0;
    loop {
        let len = engine.path.seq.len();
        if len > last_len {
            last_len = len;
            since_gain = 0;
            flips = 0;
        }
        if goal == Goal::Path && len == size {
            best = engine.path.seq.clone();
            break;
        }
        if engine.rotations >= budget {
            break;
        }
        let x = engine.path.end();
        if let Some(w) = engine.best_extension(x) {
            engine.path.push(w);
            continue;
        }
        let s = engine.path.start();
        if let Some(w) = engine.best_extension(s) {
            engine.path.reverse_from(0);
            engine.path.push(w);
            continue;
        }
        if goal == Goal::Cycle && engine.closes() {
            if len == size {
                return GraphSearchResult {
                    cycle: Some(engine.path.seq.clone()),
                    best: engine.path.seq.clone(),
                    rotations: engine.rotations,
                    disconnected: false,
                };
            }
            if engine.break_cycle() {
                continue;
            }
        }
        let stalled = since_gain >= stall_limit;
        if !stalled && engine.rotate() {
            since_gain += 1;
            continue;
        }
        since_gain = 0;
        engine.rotations += 1;
        if flips < 2 {
            // swap which end stays fixed
            flips += 1;
            engine.path.reverse_from(0);
            continue;
        }
        if engine.path.seq.len() > best.len() {
            best = engine.path.seq.clone();
        }
        engine.path.clear();
        let v = *members.choose(engine.rng).unwrap();
        engine.path.push(v);
        last_len = 0;
        flips = 0;
    }
    if engine.path.seq.len() > best.len() {
        best = engine.path.seq.clone();
    }
    GraphSearchResult { cycle: None, best, rotations: engine.rotations, disconnected }
}
