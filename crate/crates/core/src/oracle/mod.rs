//! Exact answers at small `n`.
//!
//! Weak cycles may repeat hyperedges, so `H` has a weak cycle spanning `W`
//! iff its shadow graph has a cycle through exactly `W`. The subset dynamic
//! programs below decide that question on the shadow. An independent
//! backtracking search that walks alternating vertex/edge sequences of `H`
//! itself, never building the shadow, cross-checks the reduction.

mod direct;

use serde::Serialize;
use serde_json::Value;

use crate::hypercore::{Hypergraph, ShadowGraph, Vertex, VertexSet};
use crate::weakpaths::{Walk, WeakCycle, WeakPath};
use crate::{Error, Result};

pub use direct::direct_weak_hamiltonian;

/// Largest vertex count the cycle dynamic programs accept.
pub const MAX_CYCLE_DP: usize = 20;
/// Largest vertex count the longest-path dynamic program accepts.
pub const MAX_PATH_DP: usize = 18;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Dp,
    BacktrackingDirect,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub answer: bool,
    pub witness: Option<Walk>,
    pub method: Method,
}

impl OracleVerdict {
    fn no(method: Method) -> Self {
        OracleVerdict { answer: false, witness: None, method }
    }

    pub fn cycle(&self) -> Option<&WeakCycle> {
        match &self.witness {
            Some(Walk::Cycle(c)) => Some(c),
            _ => None,
        }
    }

    pub fn to_json(&self, h: &Hypergraph) -> Value {
        let witness = match &self.witness {
            Some(Walk::Cycle(c)) => c.to_json(h),
            Some(Walk::Path(p)) => p.to_json(h),
            None => Value::Null,
        };
        serde_json::json!({
            "answer": if self.answer { "yes" } else { "no" },
            "method": self.method,
            "witness": witness,
        })
    }
}

/// Cyclic order of a Hamilton cycle of `g` restricted to `members`
/// (`members.len() <= MAX_CYCLE_DP`), if one exists.
fn hamilton_cycle_on(g: &ShadowGraph, members: &[Vertex]) -> Option<Vec<Vertex>> {
    let k = members.len();
    if k < 3 {
        return None;
    }
    let local = local_masks(g, members);
    // dp[mask]: endpoints of paths from local vertex 0 through exactly `mask`
    let full = (1usize << k) - 1;
    let mut dp = vec![0u32; 1 << k];
    dp[1] = 1;
    for mask in 1..=full {
        let ends = dp[mask];
        if ends == 0 || mask & 1 == 0 {
            continue;
        }
        for v in bits(ends) {
            let mut next = local[v] & !(mask as u32);
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                dp[mask | 1 << w] |= 1 << w;
            }
        }
    }
    let last = bits(dp[full]).find(|&v| local[v] & 1 != 0 && v != 0)?;
    Some(reconstruct(&dp, &local, full, last, members))
}

/// Walks the dp table back from `(mask, end)` to the single-vertex state.
fn reconstruct(dp: &[u32], local: &[u32], mut mask: usize, mut end: usize, members: &[Vertex]) -> Vec<Vertex> {
    let mut order = vec![members[end]];
    while mask.count_ones() > 1 {
        let prev_mask = mask & !(1 << end);
        let prev = bits(dp[prev_mask]).find(|&u| local[u] >> end & 1 == 1).expect("dp table is consistent");
        order.push(members[prev]);
        mask = prev_mask;
        end = prev;
    }
    order.reverse();
    order
}

fn local_masks(g: &ShadowGraph, members: &[Vertex]) -> Vec<u32> {
    let mut index = vec![u32::MAX; g.n()];
    for (i, &v) in members.iter().enumerate() {
        index[v as usize] = i as u32;
    }
    members
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .filter(|&&w| index[w as usize] != u32::MAX)
                .fold(0u32, |m, &w| m | 1 << index[w as usize])
        })
        .collect()
}

fn bits(mut x: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let b = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(b)
        }
    })
}

fn spanning_verdict(h: &Hypergraph, members: &[Vertex]) -> OracleVerdict {
    match hamilton_cycle_on(h.shadow(), members) {
        Some(order) => OracleVerdict {
            answer: true,
            witness: Some(Walk::Cycle(WeakCycle::lift(h, &order).expect("dp cycle lives in the shadow"))),
            method: Method::Dp,
        },
        None => OracleVerdict::no(Method::Dp),
    }
}

/// Whether `h` has a weak Hamilton cycle, decided on the shadow by subset
/// dynamic programming. Needs `n <= 20`.
pub fn exact_weak_hamiltonian(h: &Hypergraph) -> Result<OracleVerdict> {
    if h.n() > MAX_CYCLE_DP {
        return Err(Error::capability(format!(
            "exact weak Hamiltonicity supports n <= {MAX_CYCLE_DP}, got n = {}",
            h.n()
        )));
    }
    if h.n() < 3 || h.isolated_count() > 0 {
        return Ok(OracleVerdict::no(Method::Dp));
    }
    let members: Vec<Vertex> = (0..h.n() as Vertex).collect();
    Ok(spanning_verdict(h, &members))
}

/// Whether some weak cycle spans exactly `V₁(h)`. Needs `|V₁| <= 20`.
pub fn exact_spanning_cycle_on_v1(h: &Hypergraph) -> Result<OracleVerdict> {
    let v1 = h.non_isolated_vertices();
    if v1.len() > MAX_CYCLE_DP {
        return Err(Error::capability(format!(
            "exact spanning cycle supports |V1| <= {MAX_CYCLE_DP}, got {}",
            v1.len()
        )));
    }
    Ok(spanning_verdict(h, &v1.to_vec()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LongestPath {
    /// Number of edges `h`.
    pub length: usize,
    pub witness: WeakPath,
}

/// Longest weak path, i.e. longest path of the shadow. Needs `1 <= n <= 18`.
pub fn longest_weak_path_exact(h: &Hypergraph) -> Result<LongestPath> {
    let n = h.n();
    if n > MAX_PATH_DP {
        return Err(Error::capability(format!("exact longest path supports n <= {MAX_PATH_DP}, got n = {n}")));
    }
    if n == 0 {
        return Err(Error::input("longest path of an empty vertex set"));
    }
    let members: Vec<Vertex> = (0..n as Vertex).collect();
    let local = local_masks(h.shadow(), &members);
    let mut dp = vec![0u32; 1 << n];
    for v in 0..n {
        dp[1 << v] = 1 << v;
    }
    let mut best = (1usize, 0usize);
    for mask in 1usize..(1 << n) {
        let ends = dp[mask];
        if ends == 0 {
            continue;
        }
        if mask.count_ones() > best.0.count_ones() {
            best = (mask, ends.trailing_zeros() as usize);
        }
        for v in bits(ends) {
            let mut next = local[v] & !(mask as u32);
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                dp[mask | 1 << w] |= 1 << w;
            }
        }
    }
    let order = reconstruct(&dp, &local, best.0, best.1, &members);
    Ok(LongestPath {
        length: order.len() - 1,
        witness: WeakPath::lift(h, &order).expect("dp path lives in the shadow"),
    })
}

/// A weak cycle of length exactly `len`, if any. Needs `n <= 20`.
pub fn weak_cycle_of_length(h: &Hypergraph, len: usize) -> Result<Option<WeakCycle>> {
    let n = h.n();
    if n > MAX_CYCLE_DP {
        return Err(Error::capability(format!("exact cycle search supports n <= {MAX_CYCLE_DP}, got n = {n}")));
    }
    if len < 3 || len > n {
        return Ok(None);
    }
    let members: Vec<Vertex> = (0..n as Vertex).collect();
    let local = local_masks(h.shadow(), &members);
    // paths that start at the lowest vertex of their mask and only add
    // larger vertices
    let mut dp = vec![0u32; 1 << n];
    for v in 0..n {
        dp[1 << v] = 1 << v;
    }
    for mask in 1usize..(1 << n) {
        let ends = dp[mask];
        if ends == 0 {
            continue;
        }
        let low = mask.trailing_zeros() as usize;
        let count = mask.count_ones() as usize;
        if count == len {
            if let Some(v) = bits(ends).find(|&v| v != low && local[v] >> low & 1 == 1) {
                let order = reconstruct(&dp, &local, mask, v, &members);
                return Ok(Some(WeakCycle::lift(h, &order).expect("dp cycle lives in the shadow")));
            }
            continue;
        }
        let above = !((1u32 << (low + 1)) - 1);
        for v in bits(ends) {
            let mut next = local[v] & !(mask as u32) & above;
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                dp[mask | 1 << w] |= 1 << w;
            }
        }
    }
    Ok(None)
}

/// Spanning-cycle question for an arbitrary vertex subset.
pub fn exact_spanning_cycle_on(h: &Hypergraph, w: &VertexSet) -> Result<OracleVerdict> {
    if w.len() > MAX_CYCLE_DP {
        return Err(Error::capability(format!("exact spanning cycle supports |W| <= {MAX_CYCLE_DP}, got {}", w.len())));
    }
    Ok(spanning_verdict(h, &w.to_vec()))
}
