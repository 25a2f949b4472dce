//! Samplers for `H_d(n,p)` and `H_d(n,m)`, overlays, the random edge process
//! and the two-stage sprinkling schedule.

use rand::seq::index;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::Serialize;

use crate::hypercore::{binomial, for_each_combination, Hypergraph, Vertex};
use crate::{Error, Result};

/// Largest potential-edge count `edge_process` is willing to materialize.
pub const MAX_ENUMERATED_EDGES: u64 = 1 << 26;

/// Counter-based stream key: `(master seed, stream index)` fully determines
/// every draw, independently of which worker runs it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SeededRng {
    pub seed: u64,
    pub stream: u64,
}

impl SeededRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        SeededRng { seed, stream }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GnpParams {
    pub n: usize,
    pub d: usize,
    pub p: f64,
}

impl GnpParams {
    pub fn new(n: usize, d: usize, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::input(format!("edge probability {p} outside [0, 1]")));
        }
        check_shape(n, d)?;
        Ok(GnpParams { n, d, p })
    }

    pub fn q(&self) -> f64 {
        1.0 - self.p
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GnmParams {
    pub n: usize,
    pub d: usize,
    pub m: u64,
}

impl GnmParams {
    pub fn new(n: usize, d: usize, m: u64) -> Result<Self> {
        check_shape(n, d)?;
        let total = potential_edges(n, d)?;
        if m > total {
            return Err(Error::input(format!(
                "m = {m} exceeds the {total} potential edges of a {d}-uniform hypergraph on {n} vertices"
            )));
        }
        Ok(GnmParams { n, d, m })
    }
}

fn check_shape(n: usize, d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::input(format!("uniformity d = {d} must be at least 2")));
    }
    if n > u32::MAX as usize {
        return Err(Error::input(format!("n = {n} too large")));
    }
    Ok(())
}

/// `C(n, d)` as a `u64`.
pub fn potential_edges(n: usize, d: usize) -> Result<u64> {
    binomial(n as u64, d as u64)
        .and_then(|c| u64::try_from(c).ok())
        .ok_or_else(|| Error::input(format!("C({n}, {d}) overflows 64 bits")))
}

/// A probability that may have been clamped into `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Probability {
    pub value: f64,
    pub clamped: bool,
}

/// `(d-1)! (ln n + c) / n^(d-1)`, clamped into `[0, 1]`.
pub fn p_from_c(n: usize, d: usize, c: f64) -> Probability {
    let raw = factorial(d - 1) * ((n as f64).ln() + c) / (n as f64).powi(d as i32 - 1);
    clamp_probability(raw)
}

fn clamp_probability(raw: f64) -> Probability {
    if raw < 0.0 {
        Probability { value: 0.0, clamped: true }
    } else if raw > 1.0 {
        Probability { value: 1.0, clamped: true }
    } else {
        Probability { value: raw, clamped: false }
    }
}

/// `n (ln n + c) / d` rounded to the nearest integer and clamped into
/// `[0, C(n, d)]`.
pub fn m_from_c(n: usize, d: usize, c: f64) -> u64 {
    let raw = (n as f64 * ((n as f64).ln() + c) / d as f64).round();
    if raw <= 0.0 {
        return 0;
    }
    let cap = potential_edges(n, d).unwrap_or(u64::MAX);
    (raw as u64).min(cap)
}

/// `exp(-exp(-c))`.
pub fn limiting_probability(c: f64) -> f64 {
    (-(-c).exp()).exp()
}

pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

/// Maps a rank in `0..C(n,d)` to a d-subset (combinatorial number system,
/// colex order). Output is ascending.
pub fn unrank_combination(mut rank: u64, n: usize, d: usize) -> Vec<Vertex> {
    let mut out = vec![0; d];
    let mut hi = n as u64;
    for k in (1..=d as u64).rev() {
        let c = largest_below(rank, k, hi);
        rank -= small_binomial(c, k);
        out[k as usize - 1] = c as Vertex;
        hi = c;
    }
    out
}

/// Largest `c` in `[k-1, hi)` with `C(c, k) <= rank`.
fn largest_below(rank: u64, k: u64, hi: u64) -> u64 {
    // C(c, k) ~ (c - (k-1)/2)^k / k! gives a guess within a few steps
    let fact: f64 = (1..=k).map(|i| i as f64).product();
    let guess = (rank as f64 * fact).powf(1.0 / k as f64) + (k as f64 - 1.0) / 2.0;
    let mut c = (guess as u64).clamp(k - 1, hi - 1);
    while c > k - 1 && small_binomial(c, k) > rank {
        c -= 1;
    }
    while c + 1 < hi && small_binomial(c + 1, k) <= rank {
        c += 1;
    }
    c
}

/// Exact `C(n, k)` for values known to fit a rank (callers stay below the total).
fn small_binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    // falling factorial over k!, one division while it fits
    let mut falling: u64 = 1;
    let mut fact: u64 = 1;
    for i in 0..k {
        match falling.checked_mul(n - i) {
            Some(v) => {
                falling = v;
                fact *= i + 1;
            }
            None => return binomial(n, k).map_or(u64::MAX, |v| v.min(u64::MAX as u128) as u64),
        }
    }
    falling / fact
}

fn hypergraph_from_ranks(n: usize, d: usize, ranks: impl Iterator<Item = u64>) -> Hypergraph {
    let edges: Vec<Vec<Vertex>> = ranks.map(|r| unrank_combination(r, n, d)).collect();
    Hypergraph::from_unsorted_distinct(n, d, edges)
}

fn distinct_ranks<R: Rng + ?Sized>(rng: &mut R, total: u64, amount: u64) -> Vec<u64> {
    index::sample(rng, total as usize, amount as usize).into_iter().map(|i| i as u64).collect()
}

/// `H_d(n,p)`: draws `K ~ Binomial(C(n,d), p)` and then `K` distinct d-sets
/// uniformly. Conditioned on `K` the per-edge model is uniform over
/// `K`-subsets, so this matches independent per-edge sampling in law.
pub fn sample_gnp<R: Rng + ?Sized>(params: &GnpParams, rng: &mut R) -> Result<Hypergraph> {
    let total = potential_edges(params.n, params.d)?;
    if total == 0 || params.p == 0.0 {
        return Ok(Hypergraph::empty(params.n, params.d));
    }
    let count = Binomial::new(total, params.p)
        .map_err(|e| Error::input(format!("binomial({total}, {}): {e}", params.p)))?
        .sample(rng);
    let ranks = distinct_ranks(rng, total, count);
    Ok(hypergraph_from_ranks(params.n, params.d, ranks.into_iter()))
}

/// Whether an `H_d(n,p)` draw covers every vertex, without building it.
/// Same law as `sample_gnp(..).min_degree() >= 1`: `K ~ Binomial(C(n,d), p)`
/// distinct d-sets, drawn uniformly with duplicates rejected.
pub fn gnp_covers_all<R: Rng + ?Sized>(params: &GnpParams, rng: &mut R) -> Result<bool> {
    let (n, d) = (params.n, params.d);
    let total = potential_edges(n, d)?;
    if total == 0 || params.p == 0.0 {
        return Ok(n == 0);
    }
    let count = Binomial::new(total, params.p)
        .map_err(|e| Error::input(format!("binomial({total}, {}): {e}", params.p)))?
        .sample(rng);
    if (count as usize) * d < n {
        return Ok(false);
    }
    let mut covered = vec![false; n];
    let mut mark = |edge: &[usize]| {
        for &v in edge {
            covered[v] = true;
        }
    };
    if count > total / 2 {
        for rank in distinct_ranks(rng, total, count) {
            let edge: Vec<usize> = unrank_combination(rank, n, d).into_iter().map(|v| v as usize).collect();
            mark(&edge);
        }
    } else {
        // redraw the shortfall until `count` distinct ranks exist; the result is
        // exchangeable over d-sets, hence uniform over `count`-subsets
        let mut ranks: Vec<u64> = Vec::with_capacity(count as usize);
        let mut edge = vec![0usize; d];
        while (ranks.len() as u64) < count {
            for _ in ranks.len() as u64..count {
                random_d_set(rng, n, &mut edge);
                ranks.push(edge.iter().enumerate().map(|(i, &v)| small_binomial(v as u64, i as u64 + 1)).sum());
                mark(&edge);
            }
            ranks.sort_unstable();
            ranks.dedup();
        }
    }
    Ok(covered.into_iter().all(|b| b))
}

/// Uniform sorted d-subset of `0..n` written into `out`.
fn random_d_set<R: Rng + ?Sized>(rng: &mut R, n: usize, out: &mut [usize]) {
    if out.len() * 4 > n {
        out.copy_from_slice(&index::sample(rng, n, out.len()).into_vec());
    } else {
        for i in 0..out.len() {
            out[i] = loop {
                let v = rng.random_range(0..n);
                if !out[..i].contains(&v) {
                    break v;
                }
            };
        }
    }
    out.sort_unstable();
}

/// `H_d(n,m)`: exactly `m` distinct edges, uniform over all `m`-subsets.
pub fn sample_gnm<R: Rng + ?Sized>(params: &GnmParams, rng: &mut R) -> Result<Hypergraph> {
    let total = potential_edges(params.n, params.d)?;
    if params.m > total {
        return Err(Error::input(format!("m = {} exceeds C(n, d) = {total}", params.m)));
    }
    let ranks = distinct_ranks(rng, total, params.m);
    Ok(hypergraph_from_ranks(params.n, params.d, ranks.into_iter()))
}

/// Edge union. For independent `H_d(n,p_a)` and `H_d(n,p_b)` the result is
/// distributed as `H_d(n, overlay_probability(p_a, p_b))`.
pub fn union_overlay(first: &Hypergraph, second: &Hypergraph) -> Result<Hypergraph> {
    first.union(second)
}

/// `1 - (1-p_a)(1-p_b)`.
pub fn overlay_probability(pa: f64, pb: f64) -> f64 {
    1.0 - (1.0 - pa) * (1.0 - pb)
}

/// A uniformly random ordering of all `C(n,d)` potential edges.
#[derive(Clone, Debug)]
pub struct EdgeProcess {
    n: usize,
    d: usize,
    order: Vec<Vertex>,
}

impl EdgeProcess {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.order.len() / self.d
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// The `i`-th added edge (0-based).
    pub fn edge(&self, i: usize) -> &[Vertex] {
        &self.order[i * self.d..(i + 1) * self.d]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[Vertex]> + '_ {
        self.order.chunks_exact(self.d)
    }

    /// Hypergraph formed by the first `m` edges; distributed as `H_d(n,m)`.
    pub fn prefix(&self, m: usize) -> Hypergraph {
        let edges = self.iter().take(m).map(<[Vertex]>::to_vec).collect();
        Hypergraph::from_unsorted_distinct(self.n, self.d, edges)
    }
}

pub fn edge_process<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<EdgeProcess> {
    check_shape(n, d)?;
    let total = potential_edges(n, d)?;
    if total > MAX_ENUMERATED_EDGES {
        return Err(Error::input(format!("C({n}, {d}) = {total} potential edges is too many to enumerate")));
    }
    let mut all: Vec<Vec<Vertex>> = Vec::with_capacity(total as usize);
    for_each_combination(n, d, |c| all.push(c.to_vec()));
    all.shuffle(rng);
    Ok(EdgeProcess { n, d, order: all.concat() })
}

/// `0.9 (1 - (1 - 1/D)^d) / (D d!)` with `D = 3^d`: a booster-density constant
/// strictly below its admissible supremum.
pub fn default_booster_constant(d: usize) -> f64 {
    0.9 * booster_constant_supremum(d)
}

/// `(1 - (1 - 1/D)^d) / (D d!)` with `D = 3^d`.
pub fn booster_constant_supremum(d: usize) -> f64 {
    let big_d = 3f64.powi(d as i32);
    (1.0 - (1.0 - 1.0 / big_d).powi(d as i32)) / (big_d * factorial(d))
}

/// Edge probabilities of the two sprinkling runs, `p₀ → p₁` in `k₀` steps
/// and `p₁ → p` in `k₁` steps of size `Δp`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SprinkleSchedule {
    pub n: usize,
    pub d: usize,
    pub c: f64,
    pub booster_constant: f64,
    pub p: f64,
    pub p1: f64,
    pub p0: f64,
    pub dp: f64,
    pub k0: u64,
    pub k1: u64,
}

impl SprinkleSchedule {
    /// Evaluates every parameter without checking feasibility.
    pub fn evaluate(n: usize, d: usize, c: f64, booster_constant: f64) -> Self {
        let nf = n as f64;
        let ln = nf.ln();
        let nd = nf.powi(d as i32);
        let p = factorial(d - 1) * (ln + c) / nf.powi(d as i32 - 1);
        let p1 = p - ln.powi(3) / nd;
        let p0 = p1 - 2f64.powi(d as i32 + 4) / booster_constant * ln / nd;
        let dp = 2.0 / booster_constant * ln / nd;
        let k0 = (2f64.powi(d as i32 + 3) * nf / ln).ceil() as u64;
        let k1 = ln.ceil() as u64;
        SprinkleSchedule { n, d, c, booster_constant, p, p1, p0, dp, k0, k1 }
    }

    /// Edge probability of `H(0) ∪ … ∪ H(k₀)`: `1 - (1-p₀)(1-Δp)^k₀`.
    pub fn first_run_union_probability(&self) -> f64 {
        1.0 - (1.0 - self.p0) * (1.0 - self.dp).powf(self.k0 as f64)
    }

    /// Edge probability after the second run started from `p₁`.
    pub fn second_run_union_probability(&self) -> f64 {
        1.0 - (1.0 - self.p1) * (1.0 - self.dp).powf(self.k1 as f64)
    }

    /// All constraints, in the order they are checked; the first failure is
    /// reported by name.
    // negated comparisons so that NaN fails
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn check(&self) -> Result<()> {
        let fail = |what: &str| Err(Error::ScheduleInfeasible(what.to_string()));
        let sup = booster_constant_supremum(self.d);
        if !(self.booster_constant > 0.0 && self.booster_constant < sup) {
            return fail(&format!("booster constant C = {} must lie in (0, {sup})", self.booster_constant));
        }
        for (name, v) in [("p", self.p), ("p1", self.p1), ("p0", self.p0), ("dp", self.dp)] {
            if !(v > 0.0 && v < 1.0) {
                return fail(&format!("{name} = {v} not in (0, 1)"));
            }
        }
        let first_end = self.p0 + self.k0 as f64 * self.dp;
        if !(self.p0 < first_end) {
            return fail("p0 < p0 + k0*dp");
        }
        if !(first_end < self.p1) {
            return fail(&format!("p0 + k0*dp < p1 (p0 + k0*dp = {first_end:e}, p1 = {:e})", self.p1));
        }
        let second_end = self.p1 + self.k1 as f64 * self.dp;
        if !(self.p1 < second_end) {
            return fail("p1 < p1 + k1*dp");
        }
        if !(second_end < self.p) {
            return fail(&format!("p1 + k1*dp < p (p1 + k1*dp = {second_end:e}, p = {:e})", self.p));
        }
        Ok(())
    }
}

/// Evaluates and validates the schedule, naming the first violated
/// constraint on failure.
pub fn sprinkle_schedule(n: usize, d: usize, c: f64, booster_constant: f64) -> Result<SprinkleSchedule> {
    if n < 2 || d < 2 {
        return Err(Error::input(format!("schedule needs n >= 2 and d >= 2, got n = {n}, d = {d}")));
    }
    let schedule = SprinkleSchedule::evaluate(n, d, c, booster_constant);
    schedule.check()?;
    Ok(schedule)
}

/// `H(0) ⊆ H(1) ⊆ … ⊆ H(steps)`, where `H(0) ~ H_d(n, base_p)` and each step
/// overlays an independent `H_d(n, increment)`.
pub fn sprinkle_chain<R: Rng + ?Sized>(
    n: usize,
    d: usize,
    base_p: f64,
    increment: f64,
    steps: usize,
    rng: &mut R,
) -> Result<Vec<Hypergraph>> {
    let base = GnpParams::new(n, d, base_p)?;
    let step = GnpParams::new(n, d, increment)?;
    let mut chain = Vec::with_capacity(steps + 1);
    chain.push(sample_gnp(&base, rng)?);
    for _ in 0..steps {
        let next = union_overlay(chain.last().unwrap(), &sample_gnp(&step, rng)?)?;
        chain.push(next);
    }
    Ok(chain)
}

#[cfg(test)]
mod tests;
