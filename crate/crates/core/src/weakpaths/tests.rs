use num_rational::Ratio;
use proptest::prelude::*;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::expansion::u_exact;
use crate::hypercore::{binomial, for_each_combination, Hypergraph, Vertex, VertexSet};
use crate::oracle::{exact_spanning_cycle_on_v1, longest_weak_path_exact, weak_cycle_of_length};
use crate::randmodels::{p_from_c, sample_gnp, GnpParams};

fn h(n: usize, d: usize, edges: &[&[Vertex]]) -> Hypergraph {
    Hypergraph::new(n, d, edges.iter().map(|e| e.to_vec())).unwrap()
}

fn random_hypergraph(rng: &mut ChaCha8Rng, n: usize, d: usize, p: f64) -> Hypergraph {
    sample_gnp(&GnpParams::new(n, d, p).unwrap(), rng).unwrap()
}

/// Random greedy path from a random non-isolated vertex.
fn greedy_path(g: &Hypergraph, rng: &mut ChaCha8Rng) -> Option<WeakPath> {
    let v1 = g.non_isolated_vertices().to_vec();
    let start = *v1.choose(rng)?;
    let mut order = vec![start];
    let mut used = VertexSet::new(g.n());
    used.insert(start);
    loop {
        let end = *order.last().unwrap();
        let free: Vec<Vertex> = g.shadow().neighbors(end).iter().copied().filter(|&w| !used.contains(w)).collect();
        match free.choose(rng) {
            Some(&w) => {
                used.insert(w);
                order.push(w);
            }
            None => break,
        }
    }
    Some(WeakPath::lift(g, &order).unwrap())
}

fn path_0123() -> (Hypergraph, WeakPath) {
    let g = h(5, 3, &[&[0, 1, 4], &[1, 2, 4], &[2, 3, 4], &[0, 3, 4], &[1, 3, 4]]);
    let p = WeakPath::new(vec![0, 1, 2, 3], vec![vec![0, 1, 4], vec![1, 2, 4], vec![2, 3, 4]]);
    p.validate(&g).unwrap();
    (g, p)
}

#[test]
fn validate_single_edge_triangle() {
    let g = h(3, 3, &[&[0, 1, 2]]);
    let e = vec![0, 1, 2];
    let mut c = WeakCycle::new(vec![0, 1, 2], vec![e.clone(), e.clone(), e]);
    assert_eq!(c.validate(&g), Ok(()));
    assert!(!c.edges_distinct());
    c.strict_edges = true;
    let err = c.validate(&g).unwrap_err();
    assert_eq!(err, Violation::EdgesNotDistinct);
    assert_eq!(err.to_string(), "edges not distinct");
}

#[test]
fn validate_reports_coverage() {
    let g = h(4, 3, &[&[0, 1, 2]]);
    let p = WeakPath::new(vec![0, 3], vec![vec![0, 1, 2]]);
    let err = p.validate(&g).unwrap_err();
    assert_eq!(err, Violation::Coverage(0));
    assert!(err.to_string().starts_with("coverage"));
}

#[test]
fn validate_other_clauses() {
    let g = h(4, 3, &[&[0, 1, 2], &[1, 2, 3]]);
    let e = vec![0, 1, 2];
    assert_eq!(
        WeakPath::new(vec![0, 1, 0], vec![e.clone(), e.clone()]).validate(&g),
        Err(Violation::RepeatedVertex(0))
    );
    assert_eq!(WeakPath::new(vec![0, 9], vec![e.clone()]).validate(&g), Err(Violation::VertexOutOfRange(9)));
    assert_eq!(WeakPath::new(vec![0, 3], vec![vec![0, 2, 3]]).validate(&g), Err(Violation::EdgeAbsent(0)));
    assert!(matches!(WeakPath::new(vec![0, 1], vec![]).validate(&g), Err(Violation::Shape { .. })));
    assert!(matches!(WeakCycle::new(vec![0, 1], vec![e.clone(), e]).validate(&g), Err(Violation::TooShort(2))));
    assert_eq!(WeakPath::single(3).validate(&g), Ok(()));
}

#[test]
fn rotate_to_origin_neighbor() {
    let (g, p) = path_0123();
    let r = p.rotate(&g, &[0, 3, 4], 0).unwrap();
    assert_eq!(r.vertices(), &[0, 3, 2, 1]);
    assert_eq!(r.end(), 1);
    r.validate(&g).unwrap();
    assert_eq!(r.vertex_set(5), p.vertex_set(5));
}

#[test]
fn rotate_smallest_case() {
    let (g, p) = path_0123();
    let r = p.rotate(&g, &[1, 3, 4], 1).unwrap();
    assert_eq!(r.vertices(), &[0, 1, 3, 2]);
    assert_eq!(r.end(), 2);
    r.validate(&g).unwrap();
}

#[test]
fn rotate_reusing_a_path_edge() {
    let g = h(3, 3, &[&[0, 1, 2]]);
    let e = vec![0, 1, 2];
    let p = WeakPath::new(vec![0, 1, 2], vec![e.clone(), e.clone()]);
    let r = p.rotate(&g, &e, 0).unwrap();
    assert_eq!(r.vertices(), &[0, 2, 1]);
    assert!(r.edges().iter().all(|x| x == &e));
    r.validate(&g).unwrap();
}

#[test]
fn rotate_preconditions() {
    let (g, p) = path_0123();
    // i = h - 1 is excluded
    assert!(p.rotate(&g, &[2, 3, 4], 2).is_err());
    // edge absent from H
    assert!(p.rotate(&g, &[0, 2, 3], 0).is_err());
    // v_i not in the edge
    assert!(p.rotate(&g, &[1, 3, 4], 0).is_err());
    // v_h not in the edge
    assert!(p.rotate(&g, &[0, 1, 4], 0).is_err());
}

#[test]
fn posa_set_without_rotations() {
    let g = h(3, 3, &[&[0, 1, 2]]);
    let p = WeakPath::new(vec![0, 1], vec![vec![0, 1, 2]]);
    let s = posa_set(&g, &p);
    assert_eq!(s.endpoints().to_vec(), vec![1]);
    assert_eq!(s.rotations(), 0);
    // 2 is off the path, so the path extends
    assert_eq!(s.extension().unwrap().vertices(), &[0, 1, 2]);
}

#[test]
fn posa_set_on_four_cycle() {
    let g = h(4, 2, &[&[0, 1], &[1, 2], &[2, 3], &[0, 3]]);
    let p = WeakPath::lift(&g, &[0, 1, 2, 3]).unwrap();
    let s = posa_set(&g, &p);
    assert!(s.is_maximal());
    assert_eq!(s.endpoints().to_vec(), vec![1, 3]);
    assert_eq!(s.neighbor_count(&g), 2);
    assert!(s.is_non_expanding(&g));
    for (w, rep) in s.representatives() {
        assert_eq!(rep.end(), w);
        assert_eq!(rep.start(), 0);
        rep.validate(&g).unwrap();
    }
}

#[test]
fn saturated_closure_is_maximal() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let g = random_hypergraph(&mut rng, 30, 3, 0.01);
    let start = WeakPath::single(g.non_isolated_vertices().iter().next().unwrap());
    let s = saturated_posa_set(&g, &start);
    assert!(s.is_maximal());
    assert!(s.is_non_expanding(&g));
}

#[test]
fn booster_lower_bound_examples() {
    assert_eq!(booster_lower_bound(6, 3, 0), Ratio::from_integer(0));
    assert_eq!(booster_lower_bound(6, 3, 2), Ratio::new(14, 3));
    for n in 4..12u128 {
        let expect = Ratio::new((n - 1) * binomial(n as u64 - 1, 2).unwrap(), 3);
        assert_eq!(booster_lower_bound(n as usize, 3, n as usize - 1), expect);
    }
}

#[test]
fn booster_rejects_violated_preconditions() {
    let g = Hypergraph::complete(6, 3);
    let p = longest_weak_path_exact(&g).unwrap().witness;
    assert!(matches!(booster_edges(&g, &p), Err(BoosterError::CycleExists(_))));
    let g = h(4, 2, &[&[0, 1], &[1, 2], &[2, 3]]);
    let short = WeakPath::lift(&g, &[0, 1, 2]).unwrap();
    assert!(matches!(booster_edges(&g, &short), Err(BoosterError::NotMaximal(_))));
    assert!(matches!(booster_edges(&g, &WeakPath::lift(&g, &[0, 1]).unwrap()), Err(BoosterError::TooShort(1))));
}

#[test]
fn booster_edges_on_a_path_graph() {
    // shadow path 0-1-2-3-4 through pendant vertex 5's edges is impossible
    // with d = 2, so use the plain path: its only longest path is itself
    let g = h(5, 2, &[&[0, 1], &[1, 2], &[2, 3], &[3, 4]]);
    let p = WeakPath::lift(&g, &[0, 1, 2, 3, 4]).unwrap();
    let b = booster_edges(&g, &p).unwrap();
    assert_eq!(b.edges().cloned().collect::<Vec<_>>(), vec![vec![0, 4]]);
    let c = b.cycle_for(&[0, 4]).unwrap();
    c.validate(&g.with_edge(&[0, 4]).unwrap()).unwrap();
    assert_eq!(c.len(), 5);
}

#[test]
fn booster_edges_on_small_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut checked = 0;
    while checked < 30 {
        let n = rng.random_range(6..=11);
        let p = rng.random_range(0.02..0.12);
        let g = random_hypergraph(&mut rng, n, 3, p);
        let lp = longest_weak_path_exact(&g).unwrap();
        let len = lp.length;
        if len < 2 || len + 1 > n || weak_cycle_of_length(&g, len + 1).unwrap().is_some() {
            continue;
        }
        let b = booster_edges(&g, &lp.witness).unwrap();
        let u = u_exact(&g).unwrap().u;
        assert!(Ratio::from_integer(b.len() as u128) >= booster_lower_bound(n, 3, u), "{} edges, u = {u}", b.len());
        for e in b.edges().take(20) {
            assert!(!g.contains_edge(e));
            let boosted = g.with_edge(e).unwrap();
            let cycle = b.cycle_for(e).unwrap();
            cycle.validate(&boosted).unwrap();
            assert_eq!(cycle.len(), len + 1);
            assert!(weak_cycle_of_length(&boosted, len + 1).unwrap().is_some());
        }
        checked += 1;
    }
}

#[test]
fn search_complete_hypergraph() {
    let g = Hypergraph::complete(5, 3);
    let r = rotation_extension_search(&g, &SearchConfig::default());
    let c = r.cycle().expect("complete hypergraph is weak Hamiltonian");
    c.validate(&g).unwrap();
    assert_eq!(c.span(5), VertexSet::full(5));
}

#[test]
fn search_spans_exactly_v1() {
    let g = h(7, 3, &[&[0, 1, 2], &[2, 3, 4], &[0, 4, 5]]);
    assert!(exact_spanning_cycle_on_v1(&g).unwrap().answer);
    let r = rotation_extension_search(&g, &SearchConfig::default());
    let c = r.cycle().unwrap();
    c.validate(&g).unwrap();
    assert_eq!(c.span(7), g.non_isolated_vertices());
    assert!(!c.vertices().contains(&6));
}

#[test]
fn search_reports_disconnection() {
    let g = h(6, 3, &[&[0, 1, 2], &[3, 4, 5]]);
    let r = rotation_extension_search(&g, &SearchConfig::default());
    assert!(r.disconnected);
    assert!(r.cycle().is_none());
    assert_eq!(spanning_obstruction(&g), Some(Obstruction::Disconnected));
}

#[test]
fn search_matches_exact_answer_on_small_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let (mut yes, mut found) = (0, 0);
    for seed in 0..300 {
        let n = rng.random_range(5..=14);
        let p = rng.random_range(0.05..0.4);
        let g = random_hypergraph(&mut rng, n, 3, p);
        let exact = exact_spanning_cycle_on_v1(&g).unwrap();
        let r = rotation_extension_search(&g, &SearchConfig { budget: None, seed });
        if let Some(c) = r.cycle() {
            assert!(exact.answer);
            c.validate(&g).unwrap();
            assert_eq!(c.span(n), g.non_isolated_vertices());
            found += 1;
        }
        if exact.answer {
            yes += 1;
        }
    }
    assert!(yes > 100);
    assert_eq!(found, yes, "search missed {} of {yes} spanning cycles", yes - found);
}

#[test]
fn obstruction_forced_triangle() {
    // 0 and 1 lie only in {0, 1, 2}: the path 2-0-1-2 is forced
    let g = h(6, 3, &[&[0, 1, 2], &[2, 3, 4], &[2, 4, 5], &[3, 4, 5]]);
    assert_eq!(spanning_obstruction(&g), Some(Obstruction::ForcedCycle { cycle: vec![0, 1, 2] }));
    assert!(!exact_spanning_cycle_on_v1(&g).unwrap().answer);
}

#[test]
fn obstruction_forced_degree() {
    // 0, 1 and 2 each see only their own edge through 3
    let g = h(7, 2, &[&[0, 3], &[0, 4], &[1, 3], &[1, 5], &[2, 3], &[2, 6], &[4, 5], &[5, 6], &[4, 6]]);
    assert!(matches!(spanning_obstruction(&g), Some(Obstruction::ForcedDegree { vertex: 3, .. })));
    assert!(!exact_spanning_cycle_on_v1(&g).unwrap().answer);
}

#[test]
fn dlv_on_complete_hypergraph() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [8, 11, 16] {
        let g = Hypergraph::complete(n, 3);
        let r = dlv_long_path(&g, default_window(n), &mut rng).unwrap();
        assert!(r.bridged);
        r.path.validate(&g).unwrap();
        assert!(r.path.len() >= n - 2, "n = {n}: {}", r.path.len());
    }
}

#[test]
fn dlv_unbridged() {
    let g = h(8, 2, &[&[0, 1], &[1, 2], &[2, 3], &[4, 5], &[5, 6], &[6, 7]]);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let r = dlv_long_path(&g, 2, &mut rng).unwrap();
    assert!(!r.bridged);
    r.path.validate(&g).unwrap();
    assert_eq!(r.path.len(), 3);
    assert!(dlv_long_path(&Hypergraph::complete(3, 2), 2, &mut rng).is_err());
}

#[test]
fn projection_rule() {
    // n = 7: blocks {0,1,2} and {4,5,6}; 3 belongs to neither
    let g = h(7, 3, &[&[0, 1, 3], &[0, 1, 2], &[1, 4, 5], &[3, 5, 6]]);
    let g1 = ProjectionGraph::build(&g, Half::First);
    assert_eq!(g1.graph().edges().collect::<Vec<_>>(), vec![(0, 1)]);
    assert_eq!(g1.witness_edge(&g, 1, 0), Some(&[0, 1, 3][..]));
    let g2 = ProjectionGraph::build(&g, Half::Second);
    assert_eq!(g2.graph().edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    assert_eq!(g2.vertex(2), 6);
}

#[test]
fn dlv_monte_carlo_path_length() {
    let (n, d) = (400, 3);
    let p = p_from_c(n, d, -0.5).value;
    let theta = (n as f64).ln() - 0.5;
    let bound = n as f64 - 2f64.powi(d as i32 + 2) * n as f64 / theta;
    let mut rng = ChaCha8Rng::seed_from_u64(400);
    let trials = 30;
    let mut hits = 0;
    for _ in 0..trials {
        let g = random_hypergraph(&mut rng, n, d, p);
        let r = dlv_long_path(&g, default_window(n), &mut rng).unwrap();
        r.path.validate(&g).unwrap();
        if r.path.len() as f64 >= bound {
            hits += 1;
        }
    }
    assert!(hits as f64 >= 0.8 * trials as f64, "{hits}/{trials}");
}

#[test]
fn json_roundtrip() {
    let (g, p) = path_0123();
    let json = p.to_json(&g);
    assert_eq!(json["kind"], "path");
    assert_eq!(json["valid"], true);
    assert_eq!(json["sequence"][1], serde_json::json!([0, 1, 4]));
    assert_eq!(walk_from_json(&json).unwrap(), Walk::Path(p));

    let e = vec![0, 1, 2];
    let mut c = WeakCycle::new(vec![0, 1, 2], vec![e.clone(), e.clone(), e]);
    c.strict_edges = true;
    let g = h(3, 3, &[&[0, 1, 2]]);
    let json = c.to_json(&g);
    assert_eq!(json["valid"], false);
    assert_eq!(json["violation"], "edges not distinct");
    assert_eq!(json["sequence"].as_array().unwrap().len(), 7);
    assert_eq!(walk_from_json(&json).unwrap(), Walk::Cycle(c));
    assert!(walk_from_json(&serde_json::json!({"kind": "loop"})).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn posa_invariants(seed in any::<u64>(), n in 8usize..=40, d in 3usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = rng.random_range(0.5..3.0) * (n as f64).ln() / binomial(n as u64 - 1, d as u64 - 1).unwrap() as f64;
        let g = random_hypergraph(&mut rng, n, d, p.min(1.0));
        let Some(mut path) = greedy_path(&g, &mut rng) else { return Ok(()) };
        let mut bad = Vec::new();
        let set = loop {
            let set = posa_set_with(&g, &path, |before, after| {
                if after.validate(&g).is_err()
                    || after.start() != before.start()
                    || after.vertex_set(n) != before.vertex_set(n)
                {
                    bad.push(after.clone());
                }
            });
            match set.extension() {
                Some(longer) => path = longer.clone(),
                None => break set,
            }
        };
        prop_assert!(bad.is_empty());
        prop_assert!(set.is_non_expanding(&g));
        prop_assert!(!set.endpoints().contains(set.origin()));
        for (w, rep) in set.representatives() {
            prop_assert_eq!(rep.end(), w);
            prop_assert_eq!(rep.start(), set.origin());
            prop_assert_eq!(rep.vertex_set(n), path.vertex_set(n));
        }
    }

    #[test]
    fn rotation_preserves_vertices(seed in any::<u64>(), n in 6usize..=20) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_hypergraph(&mut rng, n, 3, 0.3);
        let Some(p) = greedy_path(&g, &mut rng) else { return Ok(()) };
        let len = p.len();
        if len < 2 { return Ok(()) }
        for (i, &vi) in p.vertices()[..len - 1].iter().enumerate() {
            if let Some(e) = g.covering_edge(vi, p.end()) {
                let r = p.rotate(&g, e, i).unwrap();
                prop_assert!(r.validate(&g).is_ok());
                prop_assert_eq!(r.end(), p.vertices()[i + 1]);
                prop_assert_eq!(r.start(), p.start());
                let mut a = r.vertices().to_vec();
                let mut b = p.vertices().to_vec();
                a.sort_unstable();
                b.sort_unstable();
                prop_assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn obstructions_are_sound(seed in any::<u64>(), n in 3usize..=12, d in 2usize..=3, p in 0.02f64..0.5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_hypergraph(&mut rng, n, d, p);
        if let Some(o) = spanning_obstruction(&g) {
            prop_assert!(!exact_spanning_cycle_on_v1(&g).unwrap().answer, "{}", o);
        }
    }

    #[test]
    fn lift_uses_smallest_covering_edges(seed in any::<u64>(), n in 4usize..=12) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_hypergraph(&mut rng, n, 3, 0.4);
        let Some(p) = greedy_path(&g, &mut rng) else { return Ok(()) };
        for (k, e) in p.edges().iter().enumerate() {
            let (a, b) = (p.vertices()[k], p.vertices()[k + 1]);
            let mut covering = Vec::new();
            for_each_combination(n, 3, |c| if c.contains(&a) && c.contains(&b) && g.contains_edge(c) { covering.push(c.to_vec()) });
            prop_assert_eq!(Some(e), covering.first());
        }
    }
}
