use std::time::{Duration, Instant};

use rand::Rng;

use crate::expansion::{u_sampled_check, SampledCheck};
use crate::hypercore::Hypergraph;
use crate::randmodels::{
    gnp_covers_all, limiting_probability, m_from_c, p_from_c, sample_gnm, sample_gnp, GnmParams, GnpParams,
};
use crate::row;
use crate::Result;

use super::{classify, run_indexed, trial_rng, wilson, DecidedBy, ExperimentConfig, ExperimentKind, Table, WeakHam};

#[derive(Clone, Debug, PartialEq)]
pub struct TrialRecord {
    pub trial: usize,
    pub n: usize,
    pub d: usize,
    pub c: f64,
    pub min_degree_ok: bool,
    pub weak_ham: WeakHam,
    pub decided_by: DecidedBy,
    pub isolated_count: usize,
    /// Sampled search for a non-expanding set below `⌈n/3^d⌉`; `None` when
    /// disabled.
    pub u_check: Option<bool>,
    /// A yes verdict's witness re-validated inside the trial.
    pub witness_verified: bool,
    /// Excluded from every CSV.
    pub elapsed: Duration,
}

pub const RECORD_HEADER: [&str; 9] =
    ["trial", "n", "d", "c", "min_degree_ok", "weak_ham", "decided_by", "isolated_count", "u_check"];

impl TrialRecord {
    pub fn csv_row(&self) -> Vec<String> {
        row![
            self.trial,
            self.n,
            self.d,
            self.c,
            self.min_degree_ok,
            self.weak_ham,
            self.decided_by,
            self.isolated_count,
            self.u_check.map_or(String::new(), |p| if p { "pass" } else { "fail" }.to_string()),
        ]
    }
}

/// Aggregate of one grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdRow {
    pub c: f64,
    pub trials: usize,
    pub min_degree_ok: usize,
    pub yes: usize,
    pub no: usize,
    pub unknown: usize,
    pub theory: f64,
}

impl ThresholdRow {
    pub fn phat_min_degree(&self) -> f64 {
        self.min_degree_ok as f64 / self.trials as f64
    }

    /// Among decided trials.
    pub fn phat_weak_ham(&self) -> f64 {
        self.yes as f64 / (self.yes + self.no) as f64
    }

    pub fn unknown_rate(&self) -> f64 {
        self.unknown as f64 / self.trials as f64
    }
}

#[derive(Clone, Debug)]
pub struct ThresholdOutput {
    pub table: Table,
    pub rows: Vec<ThresholdRow>,
    pub records: Vec<TrialRecord>,
}

impl ThresholdOutput {
    pub fn records_csv(&self) -> String {
        super::records_csv(
            self.table.experiment,
            &RECORD_HEADER,
            self.records.iter().map(TrialRecord::csv_row).collect(),
        )
    }
}

enum Model {
    Gnp(GnpParams),
    Gnm(GnmParams),
}

fn run_grid(cfg: &ExperimentConfig, gnm: bool) -> Result<ThresholdOutput> {
    cfg.validate()?;
    let (n, d) = (cfg.n, cfg.d);
    let param_name = if gnm { "m" } else { "p" };
    let kind = if gnm { ExperimentKind::Gnm } else { ExperimentKind::Threshold };
    let mut table = Table::new(
        kind,
        &[
            "c",
            "n",
            "d",
            param_name,
            "trials",
            "min_deg_ok",
            "phat_min_deg",
            "min_deg_lo",
            "min_deg_hi",
            "weak_ham_yes",
            "weak_ham_no",
            "unknown",
            "phat_weak_ham",
            "weak_ham_lo",
            "weak_ham_hi",
            "unknown_rate",
            "theory",
        ],
    );
    let mut rows = Vec::new();
    let mut records = Vec::new();
    for (cell, &c) in cfg.c.iter().enumerate() {
        let (model, shown) = if gnm {
            let m = m_from_c(n, d, c);
            (Model::Gnm(GnmParams::new(n, d, m)?), m.to_string())
        } else {
            let p = p_from_c(n, d, c);
            if p.clamped {
                table.notes.push(format!("c = {c}: p clamped to {}", p.value));
            }
            (Model::Gnp(GnpParams::new(n, d, p.value)?), p.value.to_string())
        };
        let cell_records = run_indexed(cfg.workers, cfg.trials, |trial| {
            let start = Instant::now();
            let mut rng = trial_rng(cfg.seed, cell, trial);
            let h = match &model {
                Model::Gnp(params) => sample_gnp(params, &mut rng),
                Model::Gnm(params) => sample_gnm(params, &mut rng),
            }
            .expect("validated parameters");
            let search_seed = rng.random();
            let mut record = decide(&h, cfg, search_seed, trial, c);
            if cfg.u_samples > 0 {
                let target = n.div_ceil(3usize.pow(d as u32));
                record.u_check =
                    Some(matches!(u_sampled_check(&h, target, cfg.u_samples, &mut rng), SampledCheck::Pass));
            }
            record.elapsed = start.elapsed();
            record
        });
        let count = |f: &dyn Fn(&TrialRecord) -> bool| cell_records.iter().filter(|r| f(r)).count();
        let row = ThresholdRow {
            c,
            trials: cfg.trials,
            min_degree_ok: count(&|r| r.min_degree_ok),
            yes: count(&|r| r.weak_ham == WeakHam::Yes),
            no: count(&|r| r.weak_ham == WeakHam::No),
            unknown: count(&|r| r.weak_ham == WeakHam::Unknown),
            theory: limiting_probability(c),
        };
        let (md_lo, md_hi) = wilson(row.min_degree_ok, row.trials);
        let (wh_lo, wh_hi) = wilson(row.yes, row.yes + row.no);
        table.push(row![
            c,
            n,
            d,
            shown,
            row.trials,
            row.min_degree_ok,
            row.phat_min_degree(),
            md_lo,
            md_hi,
            row.yes,
            row.no,
            row.unknown,
            row.phat_weak_ham(),
            wh_lo,
            wh_hi,
            row.unknown_rate(),
            row.theory,
        ]);
        rows.push(row);
        records.extend(cell_records);
    }
    Ok(ThresholdOutput { table, rows, records })
}

fn decide(h: &Hypergraph, cfg: &ExperimentConfig, seed: u64, trial: usize, c: f64) -> TrialRecord {
    let verdict = classify(h, cfg.oracle_cutoff, cfg.budget, seed);
    let witness_verified =
        verdict.witness.as_ref().is_some_and(|w| w.validate(h).is_ok() && w.span(h.n()).len() == h.n());
    assert!(verdict.weak_ham != WeakHam::Yes || witness_verified);
    TrialRecord {
        trial,
        n: h.n(),
        d: h.d(),
        c,
        min_degree_ok: h.min_degree() >= 1,
        weak_ham: verdict.weak_ham,
        decided_by: verdict.decided_by,
        isolated_count: h.isolated_count(),
        u_check: None,
        witness_verified,
        elapsed: Duration::ZERO,
    }
}

/// Threshold table under `H_d(n, p)` with `p = p_from_c(n, d, c)`.
pub fn run_threshold(cfg: &ExperimentConfig) -> Result<ThresholdOutput> {
    run_grid(cfg, false)
}

/// Threshold table under `H_d(n, m)` with `m = m_from_c(n, d, c)`.
pub fn run_gnm_threshold(cfg: &ExperimentConfig) -> Result<ThresholdOutput> {
    run_grid(cfg, true)
}

/// Fraction of `trials` samples of `H_d(n, p_from_c(n, d, c))` with minimum
/// degree at least 1, skipping the Hamiltonicity question.
pub fn min_degree_rate(n: usize, d: usize, c: f64, trials: usize, seed: u64, workers: usize) -> Result<f64> {
    let params = GnpParams::new(n, d, p_from_c(n, d, c).value)?;
    let ok = run_indexed(workers, trials, |trial| {
        let mut rng = trial_rng(seed, 0, trial);
        gnp_covers_all(&params, &mut rng).expect("validated parameters")
    });
    Ok(ok.iter().filter(|&&b| b).count() as f64 / trials as f64)
}
