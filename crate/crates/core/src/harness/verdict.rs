use std::fmt;

use crate::hypercore::Hypergraph;
use crate::oracle::exact_weak_hamiltonian;
use crate::weakpaths::{rotation_extension_search, spanning_obstruction, SearchConfig, WeakCycle};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeakHam {
    Yes,
    No,
    Unknown,
}

impl WeakHam {
    pub fn as_str(self) -> &'static str {
        match self {
            WeakHam::Yes => "yes",
            WeakHam::No => "no",
            WeakHam::Unknown => "unknown",
        }
    }
}

impl fmt::Display for WeakHam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DecidedBy {
    /// Fewer than three vertices or an isolated vertex.
    MinDegree,
    /// A forced-edge or connectivity obstruction.
    Certificate,
    Heuristic,
    Exact,
    /// Nothing decided: too large for the oracle and the search gave up.
    Undecided,
}

impl fmt::Display for DecidedBy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DecidedBy::MinDegree => "min-degree",
            DecidedBy::Certificate => "certificate",
            DecidedBy::Heuristic => "heuristic",
            DecidedBy::Exact => "exact",
            DecidedBy::Undecided => "undecided",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub weak_ham: WeakHam,
    pub decided_by: DecidedBy,
    /// Present exactly when `weak_ham` is yes; validated against `H`.
    pub witness: Option<WeakCycle>,
    pub rotations: u64,
}

/// Decides weak Hamiltonicity of `h` as far as the tools allow: minimum
/// degree, obstructions, rotation-extension search, then the exact oracle
/// when `n <= oracle_cutoff`.
pub fn classify(h: &Hypergraph, oracle_cutoff: usize, budget: Option<u64>, seed: u64) -> Classification {
    let decided =
        |weak_ham, decided_by, witness, rotations| Classification { weak_ham, decided_by, witness, rotations };
    if h.n() < 3 || h.isolated_count() > 0 {
        return decided(WeakHam::No, DecidedBy::MinDegree, None, 0);
    }
    if spanning_obstruction(h).is_some() {
        return decided(WeakHam::No, DecidedBy::Certificate, None, 0);
    }
    let report = rotation_extension_search(h, &SearchConfig { budget, seed });
    if let Some(cycle) = report.cycle() {
        assert!(cycle.validate(h).is_ok(), "search returned an invalid cycle");
        return decided(WeakHam::Yes, DecidedBy::Heuristic, Some(cycle.clone()), report.rotations);
    }
    if h.n() <= oracle_cutoff {
        let verdict = exact_weak_hamiltonian(h).expect("n is within the oracle cutoff");
        return match verdict.cycle() {
            Some(c) => {
                assert!(c.validate(h).is_ok(), "oracle returned an invalid cycle");
                decided(WeakHam::Yes, DecidedBy::Exact, Some(c.clone()), report.rotations)
            }
            None => decided(WeakHam::No, DecidedBy::Exact, None, report.rotations),
        };
    }
    decided(WeakHam::Unknown, DecidedBy::Undecided, None, report.rotations)
}
