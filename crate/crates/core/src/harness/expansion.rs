use crate::expansion::{
    minimal_non_expanding_sets, minimal_nonexpanding_connected, u_exact, u_sampled_check, SampledCheck, MAX_EXHAUSTIVE,
};
use crate::randmodels::{p_from_c, sample_gnp, GnpParams};
use crate::row;
use crate::Result;

use super::{run_indexed, trial_rng, ExperimentConfig, ExperimentKind, Table};

/// Largest `|V₁|` for which every minimal non-expanding set is audited.
pub const MAX_AUDIT_V1: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionRecord {
    pub trial: usize,
    pub v1: usize,
    pub nontrivial_components: usize,
    /// `u(H)` when `|V₁|` allowed the exhaustive scan.
    pub u: Option<usize>,
    /// `⌈n^{1/4}⌉`.
    pub small_target: usize,
    /// Some non-expanding `A ⊆ V₁` with `|A| <= small_target` exists
    /// (exhaustive) or was found (sampled).
    pub nonexp_small_v1: bool,
    /// The same question with isolated vertices allowed in `A`.
    pub nonexp_small_all: Option<bool>,
    /// `⌈n/3^d⌉`.
    pub u_target: usize,
    /// No non-expanding subset of `V₁` below `u_target` (exact) or none
    /// found (sampled).
    pub u_target_pass: bool,
    pub exhaustive: bool,
    /// `(connected, audited)` over all minimal non-expanding sets.
    pub minimal_audit: Option<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct ExpansionOutput {
    pub table: Table,
    pub records: Vec<ExpansionRecord>,
}

impl ExpansionOutput {
    pub fn single_component_frequency(&self) -> f64 {
        self.records.iter().filter(|r| r.nontrivial_components == 1).count() as f64 / self.records.len() as f64
    }
}

/// Non-expanding sets and component structure of `H_d(n, p_from_c)`.
pub fn run_expansion(cfg: &ExperimentConfig) -> Result<ExpansionOutput> {
    cfg.validate()?;
    let (n, d) = (cfg.n, cfg.d);
    let small_target = (n as f64).powf(0.25).ceil() as usize;
    let u_target = n.div_ceil(3usize.pow(d as u32));
    let mut table = Table::new(
        ExperimentKind::Expansion,
        &[
            "trial",
            "n",
            "d",
            "c",
            "v1",
            "nontrivial_components",
            "u",
            "exhaustive",
            "small_target",
            "nonexp_small_v1",
            "nonexp_small_all",
            "u_target",
            "u_target_pass",
            "minimal_connected",
            "minimal_audited",
        ],
    );
    let mut records = Vec::new();
    for (cell, &c) in cfg.c.iter().enumerate() {
        let params = GnpParams::new(n, d, p_from_c(n, d, c).value)?;
        let cell_records = run_indexed(cfg.workers, cfg.trials, |trial| {
            let mut rng = trial_rng(cfg.seed, cell, trial);
            let h = sample_gnp(&params, &mut rng).expect("validated parameters");
            let v1 = h.non_isolated_vertices().len();
            let nontrivial_components = h.nontrivial_component_count();
            let mut record = ExpansionRecord {
                trial,
                v1,
                nontrivial_components,
                u: None,
                small_target,
                nonexp_small_v1: false,
                nonexp_small_all: None,
                u_target,
                u_target_pass: true,
                exhaustive: false,
                minimal_audit: None,
            };
            if v1 <= MAX_EXHAUSTIVE {
                let report = u_exact(&h).expect("V1 is small");
                let u = report.u;
                record.u = Some(u);
                record.exhaustive = true;
                record.nonexp_small_v1 = report.witness.is_some() && u <= small_target;
                // a lone isolated vertex is non-expanding; otherwise V = V1
                record.nonexp_small_all = Some(h.isolated_count() > 0 || record.nonexp_small_v1);
                record.u_target_pass = report.witness.is_none() || u >= u_target;
            } else {
                let samples = cfg.u_samples.max(1);
                let small = u_sampled_check(&h, small_target + 1, samples, &mut rng);
                record.nonexp_small_v1 = matches!(small, SampledCheck::Counterexample(_));
                record.u_target_pass = matches!(u_sampled_check(&h, u_target, samples, &mut rng), SampledCheck::Pass);
            }
            if v1 <= MAX_AUDIT_V1 {
                let sets = minimal_non_expanding_sets(&h).expect("V1 is small");
                let connected = sets.iter().filter(|a| minimal_nonexpanding_connected(&h, a).connected).count();
                record.minimal_audit = Some((connected, sets.len()));
            }
            record
        });
        for r in &cell_records {
            let opt = |v: Option<usize>| v.map_or(String::new(), |x| x.to_string());
            table.push(row![
                r.trial,
                n,
                d,
                c,
                r.v1,
                r.nontrivial_components,
                opt(r.u),
                r.exhaustive,
                r.small_target,
                r.nonexp_small_v1,
                r.nonexp_small_all.map_or(String::new(), |b| b.to_string()),
                r.u_target,
                r.u_target_pass,
                opt(r.minimal_audit.map(|a| a.0)),
                opt(r.minimal_audit.map(|a| a.1)),
            ]);
        }
        let k = cell_records.len() as f64;
        let freq = |f: &dyn Fn(&ExpansionRecord) -> bool| cell_records.iter().filter(|r| f(r)).count() as f64 / k;
        table.notes.push(format!(
            "c = {c} single_component = {} nonexp_small_v1 = {} u_target_pass = {}",
            freq(&|r| r.nontrivial_components == 1),
            freq(&|r| r.nonexp_small_v1),
            freq(&|r| r.u_target_pass),
        ));
        records.extend(cell_records);
    }
    Ok(ExpansionOutput { table, records })
}
