use std::collections::HashMap;

use rand::Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use super::*;

fn rng(stream: u64) -> ChaCha8Rng {
    SeededRng::new(0x5eed, stream).rng()
}

fn chi_square_p_value(observed: &[u64], expected: &[f64]) -> f64 {
    let stat: f64 = observed.iter().zip(expected).map(|(&o, &e)| (o as f64 - e).powi(2) / e).sum();
    let dof = (observed.len() - 1) as f64;
    1.0 - ChiSquared::new(dof).unwrap().cdf(stat)
}

/// Rank of an edge set over the 10 triples on 5 vertices, as a 10-bit mask.
fn edge_mask(h: &Hypergraph) -> usize {
    let mut all = Vec::new();
    for_each_combination(5, 3, |c| all.push(c.to_vec()));
    h.edges().map(|e| all.iter().position(|a| a.as_slice() == e).unwrap()).fold(0, |m, i| m | 1 << i)
}

#[test]
fn p_from_c_examples() {
    assert!((p_from_c(1000, 3, 0.0).value - 1.381_551_055_796_427e-5).abs() < 1e-15);
    assert!((p_from_c(100, 3, 1.0).value - 1.121_034_037_197_618e-3).abs() < 1e-15);
    let zero = p_from_c(100, 3, -(100f64.ln()));
    assert_eq!(zero.value, 0.0);
    let neg = p_from_c(100, 3, -10.0);
    assert!(neg.clamped && neg.value == 0.0);
    assert!(!p_from_c(1000, 3, 0.0).clamped);
}

#[test]
fn m_from_c_examples() {
    assert_eq!(m_from_c(1000, 3, 0.0), 2303);
    assert_eq!(m_from_c(1000, 3, -(1000f64.ln())), 0);
    assert_eq!(m_from_c(27, 3, 0.0), 30);
    assert_eq!(m_from_c(5, 3, 100.0), 10);
}

#[test]
fn limiting_probability_examples() {
    assert!((limiting_probability(0.0) - 0.367_879_441_171_442_3).abs() < 1e-12);
    assert!((limiting_probability(2.0) - 0.873_423_018_493_116_6).abs() < 1e-12);
    assert!((limiting_probability(50.0) - 1.0).abs() < 1e-15);
}

#[test]
fn params_validate() {
    assert!(GnpParams::new(5, 3, 1.5).is_err());
    assert!(GnpParams::new(5, 1, 0.5).is_err());
    assert!(GnmParams::new(5, 3, 11).is_err());
    assert!(GnmParams::new(5, 3, 10).is_ok());
    assert!((GnpParams::new(5, 3, 0.25).unwrap().q() - 0.75).abs() < 1e-15);
}

#[test]
fn unranking_is_a_bijection() {
    let mut seen = std::collections::HashSet::new();
    for r in 0..potential_edges(9, 4).unwrap() {
        let c = unrank_combination(r, 9, 4);
        assert!(c.windows(2).all(|w| w[0] < w[1]) && *c.last().unwrap() < 9);
        assert!(seen.insert(c));
    }
    assert_eq!(seen.len(), 126);
}

#[test]
fn gnp_extremes() {
    let empty = sample_gnp(&GnpParams::new(6, 3, 0.0).unwrap(), &mut rng(0)).unwrap();
    assert_eq!(empty.edge_count(), 0);
    let full = sample_gnp(&GnpParams::new(4, 3, 1.0).unwrap(), &mut rng(0)).unwrap();
    assert_eq!(full, Hypergraph::complete(4, 3));
}

#[test]
fn gnp_mean_edge_count() {
    let params = GnpParams::new(6, 3, 0.5).unwrap();
    let trials = 100_000;
    let mut r = rng(1);
    let total: usize = (0..trials).map(|_| sample_gnp(&params, &mut r).unwrap().edge_count()).sum();
    let mean = total as f64 / trials as f64;
    // Binomial(20, 1/2): sd 5^{1/2}, mean of 1e5 draws has sd ~0.00707
    assert!((mean - 10.0).abs() < 3.0 * (5.0f64 / trials as f64).sqrt(), "mean {mean}");
}

#[test]
fn gnp_is_reproducible() {
    let params = GnpParams::new(60, 3, p_from_c(60, 3, 0.0).value).unwrap();
    let a = sample_gnp(&params, &mut SeededRng::new(7, 3).rng()).unwrap();
    let b = sample_gnp(&params, &mut SeededRng::new(7, 3).rng()).unwrap();
    let c = sample_gnp(&params, &mut SeededRng::new(7, 4).rng()).unwrap();
    assert_eq!(a.to_text(), b.to_text());
    assert_ne!(a, c);
}

#[test]
fn binomial_count_matches_per_edge_bernoulli() {
    let params = GnpParams::new(5, 3, 0.3).unwrap();
    let trials = 100_000u64;
    let mut fast = vec![0u64; 1 << 10];
    let mut naive = vec![0u64; 1 << 10];
    let mut r = rng(2);
    let mut all = Vec::new();
    for_each_combination(5, 3, |c| all.push(c.to_vec()));
    for _ in 0..trials {
        fast[edge_mask(&sample_gnp(&params, &mut r).unwrap())] += 1;
        let edges: Vec<_> = all.iter().filter(|_| r.random_bool(0.3)).cloned().collect();
        naive[edge_mask(&Hypergraph::new(5, 3, edges).unwrap())] += 1;
    }
    // two-sample chi-square over cells with adequate mass
    let mut stat = 0.0;
    let mut cells = 0;
    for (&a, &b) in fast.iter().zip(&naive) {
        if a + b >= 20 {
            stat += (a as f64 - b as f64).powi(2) / (a + b) as f64;
            cells += 1;
        }
    }
    let p = 1.0 - ChiSquared::new((cells - 1) as f64).unwrap().cdf(stat);
    assert!(p > 0.001, "p = {p}");
}

fn exact_cover_probability(n: u64, d: u64, p: f64) -> f64 {
    let total = binomial(n, d).unwrap() as f64;
    (0..=n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let missing = total - binomial(n - k, d).unwrap() as f64;
            sign * binomial(n, k).unwrap() as f64 * (1.0 - p).powf(missing)
        })
        .sum()
}

#[test]
fn covers_all_matches_exact_law() {
    // (7, 0.2) and (20, 0.02) use the rejection path, (7, 0.8) the rank path
    for (n, p, stream) in [(7usize, 0.2, 11u64), (7, 0.8, 12), (20, 0.02, 13), (20, 0.0, 14)] {
        let params = GnpParams::new(n, 3, p).unwrap();
        let exact = exact_cover_probability(n as u64, 3, p);
        let trials = 40_000;
        let mut r = rng(stream);
        let hits = (0..trials).filter(|_| gnp_covers_all(&params, &mut r).unwrap()).count();
        let phat = hits as f64 / trials as f64;
        let sd = (exact * (1.0 - exact) / trials as f64).sqrt();
        assert!((phat - exact).abs() <= 4.0 * sd + 1e-12, "n={n} p={p}: {phat} vs {exact}");
    }
}

#[test]
fn covers_all_agrees_with_sampled_min_degree() {
    let params = GnpParams::new(30, 3, p_from_c(30, 3, 0.0).value).unwrap();
    let trials = 20_000;
    let (mut a, mut b) = (rng(15), rng(16));
    let fast = (0..trials).filter(|_| gnp_covers_all(&params, &mut a).unwrap()).count() as f64;
    let full = (0..trials).filter(|_| sample_gnp(&params, &mut b).unwrap().min_degree() >= 1).count() as f64;
    let pooled = (fast + full) / (2.0 * trials as f64);
    let sd = (2.0 * pooled * (1.0 - pooled) / trials as f64).sqrt();
    assert!(((fast - full) / trials as f64).abs() <= 4.0 * sd, "{fast} vs {full}");
}

#[test]
fn gnm_extremes_and_errors() {
    let params = GnmParams { n: 5, d: 3, m: 0 };
    assert_eq!(sample_gnm(&params, &mut rng(0)).unwrap().edge_count(), 0);
    let full = GnmParams::new(6, 3, 20).unwrap();
    assert_eq!(sample_gnm(&full, &mut rng(0)).unwrap(), Hypergraph::complete(6, 3));
    let bad = GnmParams { n: 5, d: 3, m: 11 };
    assert!(matches!(sample_gnm(&bad, &mut rng(0)), Err(Error::Input(_))));
}

#[test]
fn gnm_pairs_are_uniform() {
    let params = GnmParams::new(5, 3, 2).unwrap();
    let trials = 100_000;
    let mut counts: HashMap<usize, u64> = HashMap::new();
    let mut r = rng(3);
    for _ in 0..trials {
        let h = sample_gnm(&params, &mut r).unwrap();
        assert_eq!(h.edge_count(), 2);
        *counts.entry(edge_mask(&h)).or_default() += 1;
    }
    assert_eq!(counts.len(), 45);
    let observed: Vec<u64> = counts.values().copied().collect();
    let expected = vec![trials as f64 / 45.0; 45];
    assert!(chi_square_p_value(&observed, &expected) > 0.001);
}

#[test]
fn overlay_examples() {
    let mut r = rng(4);
    let g = sample_gnp(&GnpParams::new(8, 3, 0.3).unwrap(), &mut r).unwrap();
    assert_eq!(union_overlay(&g, &Hypergraph::empty(8, 3)).unwrap(), g);
    assert_eq!(union_overlay(&g, &g).unwrap(), g);
    assert!(union_overlay(&g, &Hypergraph::empty(8, 4)).is_err());
    assert!((overlay_probability(0.3, 0.3) - 0.51).abs() < 1e-12);
}

#[test]
fn overlay_per_edge_frequency() {
    let params = GnpParams::new(5, 3, 0.3).unwrap();
    let trials = 100_000u64;
    let mut present = [0u64; 10];
    let mut r = rng(5);
    for _ in 0..trials {
        let a = sample_gnp(&params, &mut r).unwrap();
        let b = sample_gnp(&params, &mut r).unwrap();
        let m = edge_mask(&union_overlay(&a, &b).unwrap());
        for (i, slot) in present.iter_mut().enumerate() {
            *slot += (m >> i & 1) as u64;
        }
    }
    let sd = (0.51 * 0.49 / trials as f64).sqrt();
    for &c in &present {
        let f = c as f64 / trials as f64;
        // ten cells: 4 sigma keeps the family-wise false alarm rate small
        assert!((f - 0.51).abs() < 4.0 * sd, "frequency {f}");
    }
}

#[test]
fn edge_process_examples() {
    let single = edge_process(3, 3, &mut rng(0)).unwrap();
    assert_eq!(single.len(), 1);
    assert_eq!(single.edge(0), &[0, 1, 2]);
    let p = edge_process(7, 3, &mut rng(1)).unwrap();
    assert_eq!(p.prefix(p.len()), Hypergraph::complete(7, 3));
    assert!(edge_process(100_000, 3, &mut rng(0)).is_err());
}

#[test]
fn edge_process_first_edge_uniform() {
    let trials = 100_000;
    let mut counts = [0u64; 10];
    let mut all = Vec::new();
    for_each_combination(5, 3, |c| all.push(c.to_vec()));
    let mut r = rng(6);
    for _ in 0..trials {
        let p = edge_process(5, 3, &mut r).unwrap();
        counts[all.iter().position(|e| e.as_slice() == p.edge(0)).unwrap()] += 1;
    }
    let sd = (0.1 * 0.9 / trials as f64).sqrt();
    for &c in &counts {
        assert!((c as f64 / trials as f64 - 0.1).abs() < 4.0 * sd);
    }
}

#[test]
fn edge_process_prefix_matches_gnm() {
    let trials = 100_000u64;
    let mut from_process: HashMap<usize, u64> = HashMap::new();
    let mut from_gnm: HashMap<usize, u64> = HashMap::new();
    let mut r = rng(7);
    let params = GnmParams::new(5, 3, 3).unwrap();
    for _ in 0..trials {
        *from_process.entry(edge_mask(&edge_process(5, 3, &mut r).unwrap().prefix(3))).or_default() += 1;
        *from_gnm.entry(edge_mask(&sample_gnm(&params, &mut r).unwrap())).or_default() += 1;
    }
    assert_eq!(from_process.len(), 120);
    let mut stat = 0.0;
    for (k, &a) in &from_process {
        let b = from_gnm.get(k).copied().unwrap_or(0);
        stat += (a as f64 - b as f64).powi(2) / (a + b) as f64;
    }
    let p = 1.0 - ChiSquared::new(119.0).unwrap().cdf(stat);
    assert!(p > 0.001, "p = {p}");
}

#[test]
fn default_constant_is_admissible() {
    for d in 3..=5 {
        let c = default_booster_constant(d);
        assert!(c > 0.0 && c < booster_constant_supremum(d));
    }
    assert!((default_booster_constant(3) - 5.947_038_335_393_76e-4).abs() < 1e-15);
}

#[test]
fn schedule_values_at_a_million_vertices() {
    let s = SprinkleSchedule::evaluate(1_000_000, 3, 0.0, default_booster_constant(3));
    for v in [s.p, s.p1, s.p0, s.dp] {
        assert!(v > 0.0 && v < 1.0);
    }
    assert!(s.p0 < s.p1 && s.p1 < s.p);
    assert_eq!(s.k0, 4_632_475);
    assert_eq!(s.k1, 14);
    assert!((s.p - 2.763_102_111_592_855e-11).abs() < 1e-22);
    assert!((s.dp - 4.646_181_772_779_689e-14).abs() < 1e-25);
}

#[test]
fn literal_schedule_fails_first_chain() {
    // k0 * dp exceeds p1 - p0 by a factor n / ln n, so the first chain cannot hold.
    let err = sprinkle_schedule(1_000_000, 3, 0.0, default_booster_constant(3)).unwrap_err();
    match err {
        Error::ScheduleInfeasible(msg) => assert!(msg.starts_with("p0 + k0*dp < p1"), "{msg}"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn schedule_rejects_small_n_and_bad_constant() {
    assert!(matches!(sprinkle_schedule(50, 3, 0.0, default_booster_constant(3)), Err(Error::ScheduleInfeasible(_))));
    assert!(matches!(
        sprinkle_schedule(1_000_000, 3, 0.0, 1.0),
        Err(Error::ScheduleInfeasible(msg)) if msg.contains("booster constant")
    ));
}

#[test]
fn schedule_union_identity() {
    let s = SprinkleSchedule::evaluate(1_000_000, 3, 0.0, default_booster_constant(3));
    let union = s.first_run_union_probability();
    assert!(union <= s.p0 + s.k0 as f64 * s.dp);
    assert!(union > s.p0);
}

#[test]
fn sprinkle_chain_is_nested() {
    let chain = sprinkle_chain(12, 3, 0.05, 0.02, 5, &mut rng(8)).unwrap();
    assert_eq!(chain.len(), 6);
    for w in chain.windows(2) {
        assert!(w[0].edges().all(|e| w[1].contains_edge(e)));
    }
}
