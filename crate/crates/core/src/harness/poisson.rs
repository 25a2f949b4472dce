use crate::randmodels::{p_from_c, sample_gnp, GnpParams};
use crate::row;
use crate::Result;

use super::{chi_square_poisson, mean_and_stderr, poisson_pmf, run_indexed, trial_rng, tv_to_poisson};
use super::{ChiSquare, ExperimentConfig, ExperimentKind, Table};

#[derive(Clone, Debug, PartialEq)]
pub struct PoissonSummary {
    pub c: f64,
    pub lambda: f64,
    /// `counts[k]`: trials with exactly `k` isolated vertices.
    pub counts: Vec<usize>,
    pub tv: f64,
    pub chi_square: Option<ChiSquare>,
    pub mean: f64,
    pub stderr: f64,
}

#[derive(Clone, Debug)]
pub struct PoissonOutput {
    pub table: Table,
    pub summaries: Vec<PoissonSummary>,
}

/// Distribution of the isolated-vertex count against Poisson(`e^{-c}`).
pub fn run_isolated_distribution(cfg: &ExperimentConfig) -> Result<PoissonOutput> {
    cfg.validate()?;
    let mut table = Table::new(ExperimentKind::Poisson, &["c", "n", "d", "k", "count", "empirical", "poisson"]);
    let mut summaries = Vec::new();
    for (cell, &c) in cfg.c.iter().enumerate() {
        let params = GnpParams::new(cfg.n, cfg.d, p_from_c(cfg.n, cfg.d, c).value)?;
        let isolated = run_indexed(cfg.workers, cfg.trials, |trial| {
            let mut rng = trial_rng(cfg.seed, cell, trial);
            sample_gnp(&params, &mut rng).expect("validated parameters").isolated_count()
        });
        let top = isolated.iter().copied().max().unwrap_or(0);
        let mut counts = vec![0usize; top + 1];
        for &k in &isolated {
            counts[k] += 1;
        }
        let lambda = (-c).exp();
        for (k, &count) in counts.iter().enumerate() {
            table.push(row![
                c,
                cfg.n,
                cfg.d,
                k,
                count,
                count as f64 / cfg.trials as f64,
                poisson_pmf(k as u64, lambda),
            ]);
        }
        let values: Vec<f64> = isolated.iter().map(|&k| k as f64).collect();
        let (mean, stderr) = mean_and_stderr(&values);
        let summary = PoissonSummary {
            c,
            lambda,
            tv: tv_to_poisson(&counts, lambda),
            chi_square: chi_square_poisson(&counts, lambda),
            counts,
            mean,
            stderr,
        };
        let chi = summary.chi_square.map_or("chi2 = n/a".to_string(), |x| {
            format!("chi2 = {} df = {} p_value = {}", x.statistic, x.df, x.p_value)
        });
        table
            .notes
            .push(format!("c = {c} lambda = {lambda} tv = {} {chi} mean = {mean} stderr = {stderr}", summary.tv));
        summaries.push(summary);
    }
    Ok(PoissonOutput { table, summaries })
}
