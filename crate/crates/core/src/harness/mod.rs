//! Reproducible Monte Carlo experiments and their flat-file outputs.
//!
//! Trial `t` of grid cell `g` draws from the stream `(g << 32) | t` of the
//! master seed, and results are merged in index order, so a table depends
//! only on its configuration and never on the worker count.

mod config;
mod expansion;
mod pab;
mod plot;
mod poisson;
mod process;
mod stats;
mod table;
mod threshold;
mod verdict;

use rayon::prelude::*;

use crate::randmodels::SeededRng;
use crate::Result;

pub use config::{ExperimentConfig, ExperimentKind};
pub use expansion::{run_expansion, ExpansionOutput, ExpansionRecord};
pub use pab::{run_pab, PabCell, PabOutput};
pub use plot::emit_plot;
pub use poisson::{run_isolated_distribution, PoissonOutput, PoissonSummary};
pub use process::{run_process, ProcessOutput, ProcessRecord};
pub use stats::{chi_square_poisson, mean_and_stderr, poisson_pmf, tv_to_poisson, wilson, ChiSquare};
pub use table::{records_csv, Table};
pub use threshold::{min_degree_rate, run_gnm_threshold, run_threshold, ThresholdOutput, ThresholdRow, TrialRecord};
pub use verdict::{classify, Classification, DecidedBy, WeakHam};

/// Random stream of trial `trial` in grid cell `cell`.
pub fn trial_rng(seed: u64, cell: usize, trial: usize) -> rand_chacha::ChaCha8Rng {
    SeededRng::new(seed, (cell as u64) << 32 | trial as u64).rng()
}

/// `f(0), …, f(count - 1)` on `workers` threads, in index order.
pub fn run_indexed<T, F>(workers: usize, count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if workers <= 1 {
        return (0..count).map(f).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("thread pool builds");
    pool.install(|| (0..count).into_par_iter().map(f).collect())
}

/// Runs the experiment named by `cfg.kind` and returns its main table.
pub fn run(cfg: &ExperimentConfig) -> Result<Table> {
    cfg.validate()?;
    Ok(match cfg.kind {
        ExperimentKind::Threshold => run_threshold(cfg)?.table,
        ExperimentKind::Gnm => run_gnm_threshold(cfg)?.table,
        ExperimentKind::Poisson => run_isolated_distribution(cfg)?.table,
        ExperimentKind::Process => run_process(cfg)?.table,
        ExperimentKind::Expansion => run_expansion(cfg)?.table,
        ExperimentKind::Pab => run_pab(cfg)?.table,
    })
}

#[cfg(test)]
mod tests;
