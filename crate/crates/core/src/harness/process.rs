use std::collections::BTreeMap;

use rand::Rng;

use crate::randmodels::edge_process;
use crate::row;
use crate::{Error, Result};

use super::{classify, run_indexed, trial_rng, ExperimentConfig, ExperimentKind, Table, WeakHam};

/// Largest `n` the process experiment accepts.
pub const MAX_PROCESS_N: usize = 60;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProcessRecord {
    pub trial: usize,
    /// Number of edges when the last isolated vertex disappears.
    pub tau: usize,
    /// Number of edges when the process first becomes weak Hamiltonian.
    pub t: usize,
    pub equal: bool,
    /// Every step between `tau` and `t` was decided, so `t` is exact.
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct ProcessOutput {
    pub table: Table,
    pub records: Vec<ProcessRecord>,
    /// `T_d - τ_d` → number of trials.
    pub differences: BTreeMap<usize, usize>,
}

impl ProcessOutput {
    pub fn equal_fraction(&self) -> f64 {
        self.records.iter().filter(|r| r.equal).count() as f64 / self.records.len() as f64
    }
}

fn one_trial(cfg: &ExperimentConfig, trial: usize) -> ProcessRecord {
    let (n, d) = (cfg.n, cfg.d);
    let mut rng = trial_rng(cfg.seed, 0, trial);
    let order = edge_process(n, d, &mut rng).expect("validated parameters");
    let mut degree = vec![0usize; n];
    let mut isolated = n;
    let mut tau = 0;
    for (i, e) in order.iter().enumerate() {
        for &v in e {
            if degree[v as usize] == 0 {
                isolated -= 1;
            }
            degree[v as usize] += 1;
        }
        if isolated == 0 {
            tau = i + 1;
            break;
        }
    }
    let mut exact = true;
    let mut h = order.prefix(tau);
    let mut m = tau;
    loop {
        let verdict = classify(&h, cfg.oracle_cutoff, cfg.budget, rng.random());
        match verdict.weak_ham {
            WeakHam::Yes => break,
            WeakHam::No => {}
            WeakHam::Unknown => exact = false,
        }
        h = h.with_edge(order.edge(m)).expect("process edges are new");
        m += 1;
    }
    ProcessRecord { trial, tau, t: m, equal: tau == m, exact }
}

/// Hitting times of minimum degree 1 and weak Hamiltonicity along the
/// random edge process. Exact when `n <= oracle_cutoff`.
pub fn run_process(cfg: &ExperimentConfig) -> Result<ProcessOutput> {
    cfg.validate()?;
    if cfg.n < 3 {
        return Err(Error::input("process needs n >= 3"));
    }
    if cfg.n > MAX_PROCESS_N {
        return Err(Error::capability(format!("process experiment supports n <= {MAX_PROCESS_N}, got {}", cfg.n)));
    }
    let records = run_indexed(cfg.workers, cfg.trials, |trial| one_trial(cfg, trial));
    let mut table = Table::new(ExperimentKind::Process, &["trial", "n", "d", "tau", "t", "diff", "equal", "exact"]);
    let mut differences = BTreeMap::new();
    for r in &records {
        assert!(r.tau <= r.t, "tau exceeds T in trial {}", r.trial);
        *differences.entry(r.t - r.tau).or_insert(0) += 1;
        table.push(row![r.trial, cfg.n, cfg.d, r.tau, r.t, r.t - r.tau, r.equal, r.exact]);
    }
    let equal = records.iter().filter(|r| r.equal).count();
    table.notes.push(format!("equal = {equal} of {}", records.len()));
    let hist: Vec<String> = differences.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    table.notes.push(format!("diff histogram = {}", hist.join(" ")));
    Ok(ProcessOutput { table, records, differences })
}
