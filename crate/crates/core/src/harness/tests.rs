use super::*;
use crate::hypercore::{binomial, Hypergraph};

fn cfg(kind: ExperimentKind, edits: &[(&str, &str)]) -> ExperimentConfig {
    let mut c = ExperimentConfig::defaults(kind);
    c.workers = 1;
    for (k, v) in edits {
        c.set(k, v).unwrap();
    }
    c.validate().unwrap();
    c
}

#[test]
fn config_parsing() {
    let text = "# demo\nkind = threshold\nn = 50\nc = -1, 0.5 ,2\ntrials = 7 # inline\nseed = 9\nbudget = 100\n";
    let c = ExperimentConfig::parse(text, None).unwrap();
    assert_eq!(c.kind, ExperimentKind::Threshold);
    assert_eq!((c.n, c.trials, c.seed, c.budget), (50, 7, 9, Some(100)));
    assert_eq!(c.c, vec![-1.0, 0.5, 2.0]);
    assert_eq!(ExperimentConfig::parse("n = 5", Some(ExperimentKind::Gnm)).unwrap().n, 5);
    for bad in [
        "n = 5",
        "kind = threshold\nfoo = 1",
        "kind = threshold\nn 5",
        "kind = threshold\ntrials = 0",
        "kind = threshold\nc =",
    ] {
        let err = ExperimentConfig::parse(bad, None).unwrap_err();
        assert_eq!(err.exit_code(), 1, "{bad:?}: {err}");
    }
    assert!(ExperimentConfig::parse("kind = pab", Some(ExperimentKind::Gnm)).is_err());
}

#[test]
fn default_probe_grid() {
    let c = ExperimentConfig::defaults(ExperimentKind::Pab);
    assert_eq!(c.a, vec![4, 6, 8]);
    assert_eq!(c.p, vec![2f64.powi(-10), 2f64.powi(-9), 2f64.powi(-8), 2f64.powi(-7), 2f64.powi(-6)]);
}

#[test]
fn wilson_reference_values() {
    let (lo, hi) = wilson(5, 10);
    assert!((lo - 0.236_593).abs() < 1e-6 && (hi - 0.763_407).abs() < 1e-6, "{lo} {hi}");
    let (lo, hi) = wilson(0, 10);
    assert_eq!(lo, 0.0);
    assert!((hi - 0.277_533).abs() < 1e-6, "{hi}");
    assert_eq!(wilson(0, 0), (0.0, 1.0));
}

#[test]
fn poisson_statistics() {
    assert!((poisson_pmf(0, 1.0) - (-1f64).exp()).abs() < 1e-15);
    assert!((poisson_pmf(3, 2.0) - 8.0 / 6.0 * (-2f64).exp()).abs() < 1e-15);
    assert_eq!(poisson_pmf(0, 0.0), 1.0);
    // exact Poisson frequencies give distance equal to the truncated tail
    let counts: Vec<usize> = (0..12).map(|k| (poisson_pmf(k, 1.0) * 1e6).round() as usize).collect();
    let tail: f64 = 1.0 - (0..12).map(|k| poisson_pmf(k, 1.0)).sum::<f64>();
    assert!(tv_to_poisson(&counts, 1.0) < tail + 1e-5);
    assert!((tv_to_poisson(&[10], 0.0)).abs() < 1e-15);
    assert!((tv_to_poisson(&[0, 10], 0.0) - 1.0).abs() < 1e-15);
    let chi = chi_square_poisson(&counts, 1.0).unwrap();
    assert!(chi.p_value > 0.99, "{chi:?}");
    let skewed = [100, 900];
    assert!(chi_square_poisson(&skewed, 1.0).unwrap().p_value < 1e-6);
    let (m, se) = mean_and_stderr(&[1.0, 2.0, 3.0]);
    assert_eq!(m, 2.0);
    assert!((se - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
}

#[test]
fn classify_paths() {
    let isolated = Hypergraph::new(4, 3, vec![vec![0, 1, 2]]).unwrap();
    assert_eq!(classify(&isolated, 20, None, 0).decided_by, DecidedBy::MinDegree);
    let triangle = Hypergraph::new(5, 3, vec![vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
    let v = classify(&triangle, 20, None, 0);
    assert_eq!((v.weak_ham, v.decided_by), (WeakHam::No, DecidedBy::Certificate));
    let v = classify(&Hypergraph::complete(30, 3), 20, None, 0);
    assert_eq!((v.weak_ham, v.decided_by), (WeakHam::Yes, DecidedBy::Heuristic));
    assert!(v.witness.unwrap().validate(&Hypergraph::complete(30, 3)).is_ok());
}

#[test]
fn classify_falls_back_to_the_oracle() {
    // a budget of zero rotations still lets the oracle decide at small n
    let mut edges = Vec::new();
    crate::hypercore::for_each_combination(9, 3, |e| {
        if (e[0] + e[1] * 2 + e[2] * 3) % 4 == 0 {
            edges.push(e.to_vec());
        }
    });
    let h = Hypergraph::new(9, 3, edges).unwrap();
    let exact = crate::oracle::exact_weak_hamiltonian(&h).unwrap().answer;
    let v = classify(&h, 20, Some(0), 0);
    assert_ne!(v.weak_ham, WeakHam::Unknown);
    assert_eq!(v.weak_ham == WeakHam::Yes, exact);
    let v = classify(&h, 0, Some(0), 0);
    assert!(matches!(v.weak_ham, WeakHam::Unknown | WeakHam::Yes | WeakHam::No));
}

#[test]
fn threshold_extremes() {
    let high = run_threshold(&cfg(ExperimentKind::Threshold, &[("n", "500"), ("c", "8"), ("trials", "20")])).unwrap();
    let row = &high.rows[0];
    assert_eq!(row.min_degree_ok, 20);
    assert_eq!(row.yes, 20);
    let low = run_threshold(&cfg(ExperimentKind::Threshold, &[("n", "500"), ("c", "-8"), ("trials", "20")])).unwrap();
    let row = &low.rows[0];
    assert_eq!((row.min_degree_ok, row.yes), (0, 0));
    assert!(low.records.iter().all(|r| r.isolated_count > 100));
}

#[test]
fn threshold_table_shape() {
    let out = run_threshold(&cfg(
        ExperimentKind::Threshold,
        &[("n", "60"), ("c", "-1,0,1,2"), ("trials", "30"), ("u_samples", "5")],
    ))
    .unwrap();
    let csv = out.table.to_csv();
    assert!(csv.starts_with("# weak-ham-lab v1 threshold\nc,n,d,p,trials,"));
    assert_eq!(csv.lines().count(), 2 + 4);
    for row in &out.rows {
        assert!(row.phat_weak_ham() <= row.phat_min_degree() + 1e-12);
        assert_eq!(row.yes + row.no + row.unknown, row.trials);
    }
    for r in &out.records {
        assert!(r.weak_ham != WeakHam::Yes || (r.witness_verified && r.min_degree_ok));
        assert!(r.u_check.is_some());
    }
    let records = out.records_csv();
    assert_eq!(records.lines().count(), 3 + 120);
}

#[test]
fn gnm_extremes() {
    let n = 8;
    let total = binomial(8, 3).unwrap() as f64;
    // m_from_c rounds n(ln n + c)/d; pick c hitting 0 and C(n, d)
    let c_zero = -(n as f64).ln();
    let c_full = 3.0 * total / n as f64 - (n as f64).ln();
    let out = run_gnm_threshold(&cfg(
        ExperimentKind::Gnm,
        &[("n", "8"), ("c", &format!("{c_zero},{c_full}")), ("trials", "10")],
    ))
    .unwrap();
    assert_eq!(out.table.get(0, "m"), Some("0"));
    assert_eq!(out.table.get(1, "m"), Some("56"));
    assert_eq!((out.rows[0].yes, out.rows[1].yes), (0, 10));
}

#[test]
fn poisson_point_mass_and_mean() {
    let out = run_isolated_distribution(&cfg(ExperimentKind::Poisson, &[("n", "30"), ("c", "1000"), ("trials", "5")]))
        .unwrap();
    assert_eq!(out.summaries[0].counts, vec![5]);
    let out = run_isolated_distribution(&cfg(ExperimentKind::Poisson, &[("n", "2000"), ("c", "2"), ("trials", "400")]))
        .unwrap();
    let s = &out.summaries[0];
    let sigma = (s.lambda / 400.0).sqrt();
    assert!((s.mean - (-2f64).exp()).abs() <= 3.0 * sigma, "{s:?}");
    assert!(out.table.notes[0].contains("tv = "));
}

#[test]
fn process_hitting_times() {
    let single = run_process(&cfg(ExperimentKind::Process, &[("n", "3"), ("trials", "5")])).unwrap();
    assert!(single.records.iter().all(|r| r.tau == 1 && r.t == 1 && r.equal && r.exact));
    let out = run_process(&cfg(ExperimentKind::Process, &[("n", "12"), ("trials", "40")])).unwrap();
    assert!(out.records.iter().all(|r| r.tau <= r.t && r.exact));
    assert_eq!(out.differences.values().sum::<usize>(), 40);
    assert!(out.equal_fraction() > 0.0);
    let big = cfg(ExperimentKind::Process, &[("n", "61"), ("trials", "1")]);
    assert_eq!(run_process(&big).unwrap_err().exit_code(), 2);
}

#[test]
fn expansion_table() {
    let edgeless =
        run_expansion(&cfg(ExperimentKind::Expansion, &[("n", "20"), ("c", "-1000"), ("trials", "3")])).unwrap();
    for r in &edgeless.records {
        assert_eq!((r.v1, r.nontrivial_components, r.u), (0, 0, Some(1)));
        assert!(!r.nonexp_small_v1);
    }
    let small = run_expansion(&cfg(ExperimentKind::Expansion, &[("n", "18"), ("c", "0"), ("trials", "20")])).unwrap();
    for r in &small.records {
        assert!(r.exhaustive);
        if let Some((connected, audited)) = r.minimal_audit {
            assert_eq!(connected, audited);
        }
    }
    let large = run_expansion(&cfg(
        ExperimentKind::Expansion,
        &[("n", "120"), ("c", "0.5"), ("trials", "10"), ("u_samples", "20")],
    ))
    .unwrap();
    assert!(large.records.iter().all(|r| !r.exhaustive && r.u.is_none()));
    assert!(large.single_component_frequency() >= 0.5);
}

#[test]
fn pab_grid() {
    let out = run_pab(&cfg(ExperimentKind::Pab, &[("a", "4,6"), ("p", "0,0.0078125"), ("trials", "500")])).unwrap();
    // a = 6 at p = 2^-7 breaks 2a sqrt(p) <= 1
    assert_eq!(out.excluded(), 12);
    assert_eq!(out.violations(), 0);
    let zero: Vec<&PabCell> = out.cells.iter().filter(|c| c.p == 0.0).collect();
    assert!(zero.iter().all(|c| c.probe.as_ref().unwrap().phat() == 0.0 && c.bound_simple == Some(0.0)));
    let csv = out.table.to_csv();
    assert!(csv.contains(",excluded\n"));
    assert!(csv.lines().nth(2).unwrap().starts_with("a,b,d,p,trials,successes,phat,bound_exact,bound_simple"));
}

#[test]
fn worker_count_does_not_change_output() {
    for kind in ExperimentKind::ALL {
        let edits: Vec<(&str, &str)> = match kind {
            ExperimentKind::Pab => vec![("a", "4"), ("trials", "200")],
            ExperimentKind::Process => vec![("n", "10"), ("trials", "12")],
            _ => vec![("n", "40"), ("trials", "12"), ("c", "0,1")],
        };
        let one = cfg(kind, &edits);
        let mut four = one.clone();
        four.workers = 4;
        let a = run(&one).unwrap().to_csv();
        assert_eq!(a, run(&four).unwrap().to_csv(), "{kind}");
        assert_eq!(a, run(&one).unwrap().to_csv(), "{kind}");
        let mut other = one.clone();
        other.seed += 1;
        if kind != ExperimentKind::Pab {
            assert_ne!(a, run(&other).unwrap().to_csv(), "{kind}");
        }
    }
}

#[test]
fn plot_rejects_bad_input() {
    assert!(emit_plot("").is_err());
    assert!(emit_plot("# weak-ham-lab v1 threshold\nc,phat_weak_ham\n").is_err());
    let header = "c,phat_weak_ham,weak_ham_lo,weak_ham_hi,phat_min_deg,min_deg_lo,min_deg_hi,theory";
    assert!(emit_plot(&format!("{header}\n")).is_err());
    assert!(emit_plot("a,b\n1,2\n").is_err());
    let one = format!("{header}\n0,0.4,0.3,0.5,0.4,0.3,0.5,0.37\n");
    let svg = emit_plot(&one).unwrap();
    assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
}
