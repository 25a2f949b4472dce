//! Non-expanding sets and the greedy edge-finding probe.
//!
//! `A` is non-expanding when `|N(A)| < 2|A|`. `u(H)` is the size of the
//! smallest non-expanding set of non-isolated vertices, or `|V₁| + 1` when
//! there is none.

mod probe;

use rand::seq::IteratorRandom;
use rand::Rng;

use crate::hypercore::{Hypergraph, ShadowGraph, Vertex, VertexSet};
use crate::{Error, Result};

pub use probe::{greedy_probe, pab_bound_exact, pab_bound_simple, GreedyProbeResult, ProbeTrial, PROBE_CSV_HEADER};

/// Largest universe the exhaustive scans accept.
pub const MAX_EXHAUSTIVE: usize = 22;
/// Largest set whose proper subsets are checked for minimality.
pub const MAX_MINIMALITY_CHECK: usize = 14;

pub fn is_non_expanding(h: &Hypergraph, a: &VertexSet) -> bool {
    h.neighbors(a).len() < 2 * a.len()
}

/// `is_non_expanding` computed from the shadow graph alone.
pub fn is_non_expanding_in_shadow(g: &ShadowGraph, a: &VertexSet) -> bool {
    let mut n = VertexSet::new(g.n());
    for v in a.iter() {
        for &w in g.neighbors(v) {
            n.insert(w);
        }
    }
    n.difference_with(a);
    n.len() < 2 * a.len()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionReport {
    /// Smallest non-expanding size, or `|universe| + 1`.
    pub u: usize,
    /// Smallest non-expanding set with the lowest bitmask among its size.
    pub witness: Option<VertexSet>,
    pub exhaustive: bool,
}

/// `u(H)` by exhaustive enumeration of subsets of `V₁`. Needs `|V₁| <= 22`.
pub fn u_exact(h: &Hypergraph) -> Result<ExpansionReport> {
    smallest_non_expanding(h, &h.non_isolated_vertices())
}

/// Smallest non-expanding subset of `universe`. Needs
/// `|universe ∪ V₁| <= 22`.
pub fn smallest_non_expanding(h: &Hypergraph, universe: &VertexSet) -> Result<ExpansionReport> {
    let mut relevant = universe.clone();
    relevant.union_with(&h.non_isolated_vertices());
    let members = relevant.to_vec();
    let k = members.len();
    if k > MAX_EXHAUSTIVE {
        return Err(Error::capability(format!(
            "exhaustive expansion scan supports at most {MAX_EXHAUSTIVE} vertices, got {k}; use u_sampled_check"
        )));
    }
    let mut index = vec![u32::MAX; h.n()];
    for (i, &v) in members.iter().enumerate() {
        index[v as usize] = i as u32;
    }
    let adj: Vec<u32> = members
        .iter()
        .map(|&v| h.shadow().neighbors(v).iter().fold(0u32, |m, &w| m | 1 << index[w as usize]))
        .collect();
    let allowed = universe.iter().fold(0u32, |m, v| m | 1 << index[v as usize]);
    let mut reach = vec![0u32; 1 << k];
    let mut best: Option<(u32, usize)> = None;
    for mask in 1usize..(1 << k) {
        let low = mask.trailing_zeros() as usize;
        reach[mask] = reach[mask & (mask - 1)] | adj[low];
        let m = mask as u32;
        if m & !allowed != 0 {
            continue;
        }
        let size = m.count_ones();
        if best.is_some_and(|(s, _)| size >= s) {
            continue;
        }
        if (reach[mask] & !m).count_ones() < 2 * size {
            best = Some((size, mask));
        }
    }
    Ok(match best {
        Some((size, mask)) => ExpansionReport {
            u: size as usize,
            witness: Some(
                VertexSet::from_vertices(h.n(), (0..k).filter(|i| mask >> i & 1 == 1).map(|i| members[i]))
                    .expect("members are in range"),
            ),
            exhaustive: true,
        },
        None => ExpansionReport { u: universe.len() + 1, witness: None, exhaustive: true },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SampledCheck {
    /// No small non-expanding set found; one-sided evidence only.
    Pass,
    /// A non-expanding `A ⊆ V₁` with `|A| < u_target`.
    Counterexample(VertexSet),
}

/// `|N(A)| - 2|A|`; negative exactly when `A` is non-expanding.
fn slack(h: &Hypergraph, a: &VertexSet) -> i64 {
    h.neighbors(a).len() as i64 - 2 * a.len() as i64
}

/// Randomized search for a non-expanding `A ⊆ V₁` with `|A| < u_target`.
///
/// Each sample grows a random shadow-connected set and then descends on
/// `|N(A)| - 2|A|` by single additions and removals.
pub fn u_sampled_check<R: Rng + ?Sized>(h: &Hypergraph, u_target: usize, samples: usize, rng: &mut R) -> SampledCheck {
    let v1 = h.non_isolated_vertices();
    let cap = (u_target.saturating_sub(1)).min(v1.len());
    if cap == 0 {
        return SampledCheck::Pass;
    }
    for _ in 0..samples {
        let size = rng.random_range(1..=cap);
        let start = v1.iter().choose(rng).expect("V1 is non-empty");
        let mut a = VertexSet::new(h.n());
        a.insert(start);
        while a.len() < size {
            let frontier = h.neighbors(&a);
            match frontier.iter().choose(rng) {
                Some(w) => a.insert(w),
                None => break,
            }
        }
        let mut score = slack(h, &a);
        loop {
            if score < 0 {
                return SampledCheck::Counterexample(a);
            }
            let mut moves: Vec<(Vertex, bool)> = Vec::new();
            if a.len() > 1 {
                moves.extend(a.iter().map(|v| (v, false)));
            }
            if a.len() < cap {
                moves.extend(h.neighbors(&a).iter().map(|v| (v, true)));
            }
            let mut improved = None;
            for (v, add) in moves {
                let mut b = a.clone();
                if add {
                    b.insert(v);
                } else {
                    b.remove(v);
                }
                let s = slack(h, &b);
                if s < improved.as_ref().map_or(score, |(t, _)| *t) {
                    improved = Some((s, b));
                }
            }
            match improved {
                Some((s, b)) => {
                    score = s;
                    a = b;
                }
                None => break,
            }
        }
    }
    SampledCheck::Pass
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Minimality {
    /// No proper subset is non-expanding.
    Verified,
    /// A proper non-expanding subset.
    Refuted(VertexSet),
    /// `|A|` exceeds [`MAX_MINIMALITY_CHECK`]; minimality was not checked.
    Unverified,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConnectivityAudit {
    /// The sub-hypergraph induced on `A ∪ N(A)` is connected.
    pub connected: bool,
    pub minimality: Minimality,
}

/// Whether `H[A ∪ N(A)]` is connected, together with a minimality check of
/// `A` when `|A| <= 14`. Minimal non-expanding sets always pass.
pub fn minimal_nonexpanding_connected(h: &Hypergraph, a: &VertexSet) -> ConnectivityAudit {
    let mut t = h.neighbors(a);
    t.union_with(a);
    let connected = h.induced(&t).is_connected_on(&t);
    let members = a.to_vec();
    let minimality = if members.len() > MAX_MINIMALITY_CHECK {
        Minimality::Unverified
    } else {
        let full = (1u32 << members.len()) - 1;
        (1..full)
            .map(|mask| {
                VertexSet::from_vertices(h.n(), (0..members.len()).filter(|i| mask >> i & 1 == 1).map(|i| members[i]))
                    .expect("members are in range")
            })
            .find(|b| is_non_expanding(h, b))
            .map_or(Minimality::Verified, Minimality::Refuted)
    };
    ConnectivityAudit { connected, minimality }
}

/// Every minimal non-expanding subset of `V₁`, by exhaustive scan. Needs
/// `|V₁| <= 22`.
pub fn minimal_non_expanding_sets(h: &Hypergraph) -> Result<Vec<VertexSet>> {
    let members = h.non_isolated_vertices().to_vec();
    let k = members.len();
    if k > MAX_EXHAUSTIVE {
        return Err(Error::capability(format!(
            "exhaustive expansion scan supports at most {MAX_EXHAUSTIVE} vertices, got {k}"
        )));
    }
    let mut index = vec![u32::MAX; h.n()];
    for (i, &v) in members.iter().enumerate() {
        index[v as usize] = i as u32;
    }
    let adj: Vec<u32> = members
        .iter()
        .map(|&v| h.shadow().neighbors(v).iter().fold(0u32, |m, &w| m | 1 << index[w as usize]))
        .collect();
    let mut reach = vec![0u32; 1 << k];
    // contains_nonexp[mask]: some non-empty submask is non-expanding
    let mut below = vec![false; 1 << k];
    let mut minimal = Vec::new();
    for mask in 1usize..(1 << k) {
        let low = mask.trailing_zeros() as usize;
        reach[mask] = reach[mask & (mask - 1)] | adj[low];
        let m = mask as u32;
        let proper = (0..k).any(|i| m >> i & 1 == 1 && below[mask & !(1 << i)]);
        let here = (reach[mask] & !m).count_ones() < 2 * m.count_ones();
        below[mask] = proper || here;
        if here && !proper {
            minimal.push(
                VertexSet::from_vertices(h.n(), (0..k).filter(|i| m >> i & 1 == 1).map(|i| members[i]))
                    .expect("members are in range"),
            );
        }
    }
    Ok(minimal)
}
