use crate::expansion::{greedy_probe, pab_bound_exact, pab_bound_simple, GreedyProbeResult};
use crate::row;
use crate::{Error, Result};

use super::{run_indexed, trial_rng, ExperimentConfig, ExperimentKind, Table};

#[derive(Clone, Debug, PartialEq)]
pub struct PabCell {
    pub a: usize,
    pub b: usize,
    pub p: f64,
    /// `None` when the simple bound's hypothesis fails and the cell is
    /// excluded.
    pub probe: Option<GreedyProbeResult>,
    pub bound_exact: f64,
    pub bound_simple: Option<f64>,
}

impl PabCell {
    /// `p̂ - 3 stderr` exceeds one of the bounds.
    pub fn violation(&self) -> bool {
        let Some(probe) = &self.probe else {
            return false;
        };
        let low = probe.phat() - 3.0 * probe.stderr();
        low > self.bound_exact || self.bound_simple.is_some_and(|s| low > s)
    }
}

#[derive(Clone, Debug)]
pub struct PabOutput {
    pub table: Table,
    pub cells: Vec<PabCell>,
}

impl PabOutput {
    pub fn violations(&self) -> usize {
        self.cells.iter().filter(|c| c.violation()).count()
    }

    pub fn excluded(&self) -> usize {
        self.cells.iter().filter(|c| c.probe.is_none()).count()
    }
}

/// Greedy-probe estimates against both bounds over `a × (1..=2a) × p`.
pub fn run_pab(cfg: &ExperimentConfig) -> Result<PabOutput> {
    cfg.validate()?;
    let d = cfg.d;
    let grid: Vec<(usize, usize, f64)> =
        cfg.a.iter().flat_map(|&a| (1..=2 * a).flat_map(move |b| cfg.p.iter().map(move |&p| (a, b, p)))).collect();
    let cells = run_indexed(cfg.workers, grid.len(), |cell| -> Result<PabCell> {
        let (a, b, p) = grid[cell];
        let bound_exact = pab_bound_exact(a, b, d, 1.0 - p)?;
        let bound_simple = match pab_bound_simple(a, b, d, p) {
            Ok(v) => Some(v),
            Err(Error::Domain(_)) => None,
            Err(e) => return Err(e),
        };
        let probe = match bound_simple {
            Some(_) => {
                let mut rng = trial_rng(cfg.seed, cell, 0);
                Some(greedy_probe(a, b, d, p, cfg.trials, &mut rng)?)
            }
            None => None,
        };
        if let Some(probe) = &probe {
            let rounds = b.div_ceil(d - 1);
            assert!(probe.trials.iter().all(|t| !t.success || t.edges_found >= rounds));
        }
        Ok(PabCell { a, b, p, probe, bound_exact, bound_simple })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let mut table = Table::new(
        ExperimentKind::Pab,
        &[
            "a",
            "b",
            "d",
            "p",
            "trials",
            "successes",
            "phat",
            "bound_exact",
            "bound_simple",
            "stderr",
            "violation",
            "status",
        ],
    );
    for cell in &cells {
        let simple = cell.bound_simple.map_or(String::new(), |v| v.to_string());
        match &cell.probe {
            Some(probe) => table.push(row![
                cell.a,
                cell.b,
                d,
                cell.p,
                probe.trial_count(),
                probe.successes(),
                probe.phat(),
                cell.bound_exact,
                simple,
                probe.stderr(),
                cell.violation(),
                "ok",
            ]),
            None => table.push(row![cell.a, cell.b, d, cell.p, 0, "", "", cell.bound_exact, "", "", false, "excluded"]),
        }
    }
    let violations = cells.iter().filter(|c| c.violation()).count();
    let excluded = cells.iter().filter(|c| c.probe.is_none()).count();
    table.notes.push(format!("violations = {violations} excluded = {excluded}"));
    Ok(PabOutput { table, cells })
}
