use fixedbitset::FixedBitSet;
use rand::Rng;

use crate::hypercore::{binomial, Vertex};
use crate::{Error, Result};

/// One run of the greedy edge-finding algorithm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeTrial {
    /// Every vertex of `B` is adjacent to `A` inside `A ∪ B`.
    pub success: bool,
    pub edges_found: usize,
    /// `M_j`: edges tested in step `j`, the last entry belonging to the
    /// failing step when `success` is false.
    pub checked: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GreedyProbeResult {
    pub a: usize,
    pub b: usize,
    pub d: usize,
    pub p: f64,
    pub trials: Vec<ProbeTrial>,
}

impl GreedyProbeResult {
    pub fn trial_count(&self) -> usize {
        self.trials.len()
    }

    pub fn successes(&self) -> usize {
        self.trials.iter().filter(|t| t.success).count()
    }

    pub fn phat(&self) -> f64 {
        self.successes() as f64 / self.trial_count() as f64
    }

    /// Binomial standard error of `phat`.
    pub fn stderr(&self) -> f64 {
        let p = self.phat();
        (p * (1.0 - p) / self.trial_count() as f64).sqrt()
    }

    /// `a,b,d,p,trials,successes,phat,bound_exact,bound_simple`; the simple
    /// bound is empty when its hypothesis fails.
    pub fn csv_row(&self) -> String {
        let exact = pab_bound_exact(self.a, self.b, self.d, 1.0 - self.p).expect("probe inputs are valid");
        let simple = pab_bound_simple(self.a, self.b, self.d, self.p).map(|v| v.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.a,
            self.b,
            self.d,
            self.p,
            self.trial_count(),
            self.successes(),
            self.phat(),
            exact,
            simple
        )
    }
}

pub const PROBE_CSV_HEADER: &str = "a,b,d,p,trials,successes,phat,bound_exact,bound_simple";

fn check_shape(a: usize, b: usize, d: usize) -> Result<()> {
    if a == 0 || b == 0 || d < 2 || a + b < d {
        return Err(Error::input(format!("need a, b >= 1, d >= 2 and a + b >= d; got a = {a}, b = {b}, d = {d}")));
    }
    Ok(())
}

/// Colex rank of a sorted combination.
fn rank(c: &[Vertex]) -> usize {
    c.iter().enumerate().map(|(i, &v)| binomial(v as u64, i as u64 + 1).unwrap() as usize).sum()
}

/// Calls `f` on every `d`-subset of `0..n` that contains `v` and meets
/// `0..a`, in lexicographic order, until `f` returns true.
fn scan_edges<F: FnMut(&[Vertex]) -> bool>(n: usize, d: usize, a: usize, v: Vertex, mut f: F) {
    let others: Vec<Vertex> = (0..n as Vertex).filter(|&w| w != v).collect();
    let k = d - 1;
    let mut idx: Vec<usize> = (0..k).collect();
    let mut edge = vec![0; d];
    loop {
        let chosen = idx.iter().map(|&i| others[i]);
        if (others[idx[0]] as usize) < a {
            let mut j = 0;
            let mut placed = false;
            for w in chosen {
                if !placed && v < w {
                    edge[j] = v;
                    j += 1;
                    placed = true;
                }
                edge[j] = w;
                j += 1;
            }
            if !placed {
                edge[j] = v;
            }
            if f(&edge) {
                return;
            }
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] != others.len() - k + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn probe_once<R: Rng + ?Sized>(a: usize, b: usize, d: usize, p: f64, rng: &mut R) -> ProbeTrial {
    let n = a + b;
    // edges are sampled lazily: each potential edge is tested at most once,
    // which has the same law as sampling all of them up front
    let mut tested = FixedBitSet::with_capacity(binomial(n as u64, d as u64).unwrap() as usize);
    let mut covered = vec![false; b];
    let mut checked = Vec::new();
    let mut edges_found = 0;
    while let Some(j) = covered.iter().position(|&c| !c) {
        let v = (a + j) as Vertex;
        let mut count = 0u32;
        let mut found = None;
        scan_edges(n, d, a, v, |e| {
            let r = rank(e);
            if tested.contains(r) {
                return false;
            }
            tested.insert(r);
            count += 1;
            if rng.random_bool(p) {
                found = Some(e.to_vec());
                true
            } else {
                false
            }
        });
        checked.push(count);
        let Some(e) = found else {
            return ProbeTrial { success: false, edges_found, checked };
        };
        edges_found += 1;
        for &w in &e {
            if w as usize >= a {
                covered[w as usize - a] = true;
            }
        }
    }
    ProbeTrial { success: true, edges_found, checked }
}

/// Runs the greedy edge-finding algorithm `trials` times on
/// `A = 0..a`, `B = a..a+b` with edges inside `A ∪ B` present independently
/// with probability `p`. Steps take the lowest uncovered vertex of `B` and
/// test its untested `A`-touching edges in lexicographic order.
pub fn greedy_probe<R: Rng + ?Sized>(
    a: usize,
    b: usize,
    d: usize,
    p: f64,
    trials: usize,
    rng: &mut R,
) -> Result<GreedyProbeResult> {
    check_shape(a, b, d)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::input(format!("p = {p} is not a probability")));
    }
    if trials == 0 {
        return Err(Error::input("trials must be at least 1"));
    }
    let trials = (0..trials).map(|_| probe_once(a, b, d, p, rng)).collect();
    Ok(GreedyProbeResult { a, b, d, p, trials })
}

/// `(1 - q^{C(a+b-1, d-1) - C(b-1, d-1)})^{⌈b/(d-1)⌉}`.
pub fn pab_bound_exact(a: usize, b: usize, d: usize, q: f64) -> Result<f64> {
    check_shape(a, b, d)?;
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::input(format!("q = {q} is not a probability")));
    }
    let k = d as u64 - 1;
    let exponent = binomial((a + b - 1) as u64, k).unwrap() - binomial(b as u64 - 1, k).unwrap();
    let rounds = b.div_ceil(d - 1) as i32;
    Ok((1.0 - q.powf(exponent as f64)).powi(rounds))
}

/// `(2a p^{1/(d-1)})^b`, defined under `a >= d`, `1 <= b <= 2a` and
/// `2a p^{1/(d-1)} <= 1`.
pub fn pab_bound_simple(a: usize, b: usize, d: usize, p: f64) -> Result<f64> {
    if d < 2 || a < d || b == 0 || b > 2 * a || !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!(
            "simple bound needs a >= d, 1 <= b <= 2a and p in [0, 1]; got a = {a}, b = {b}, d = {d}, p = {p}"
        )));
    }
    let base = 2.0 * a as f64 * p.powf(1.0 / (d - 1) as f64);
    if base > 1.0 {
        return Err(Error::Domain(format!("simple bound needs 2a p^(1/(d-1)) <= 1, got {base}")));
    }
    Ok(base.powi(b as i32))
}
