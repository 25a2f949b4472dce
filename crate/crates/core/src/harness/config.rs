use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExperimentKind {
    Threshold,
    Gnm,
    Poisson,
    Process,
    Expansion,
    Pab,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 6] = [
        ExperimentKind::Threshold,
        ExperimentKind::Gnm,
        ExperimentKind::Poisson,
        ExperimentKind::Process,
        ExperimentKind::Expansion,
        ExperimentKind::Pab,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Threshold => "threshold",
            ExperimentKind::Gnm => "gnm",
            ExperimentKind::Poisson => "poisson",
            ExperimentKind::Process => "process",
            ExperimentKind::Expansion => "expansion",
            ExperimentKind::Pab => "pab",
        }
    }
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExperimentKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::input(format!("unknown experiment {s:?}")))
    }
}

/// Everything an experiment run depends on. The seed fixes every random
/// draw; the worker count never changes the output.
#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub n: usize,
    pub d: usize,
    /// Offsets `c` for the threshold-type experiments.
    pub c: Vec<f64>,
    /// Edge probabilities for the probe grid.
    pub p: Vec<f64>,
    /// Sizes of `A` for the probe grid; `b` runs over `1..=2a`.
    pub a: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub workers: usize,
    pub out: Option<PathBuf>,
    /// Rotation budget per search; `None` means the search default.
    pub budget: Option<u64>,
    /// Largest `n` handed to the exact oracle.
    pub oracle_cutoff: usize,
    /// Random restarts for sampled expansion checks; 0 disables them in the
    /// threshold experiments.
    pub u_samples: usize,
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

impl ExperimentConfig {
    pub fn defaults(kind: ExperimentKind) -> Self {
        let base = ExperimentConfig {
            kind,
            n: 1000,
            d: 3,
            c: vec![-1.0, 0.0, 1.0, 2.0],
            p: Vec::new(),
            a: Vec::new(),
            trials: 1000,
            seed: 1,
            workers: default_workers(),
            out: None,
            budget: None,
            oracle_cutoff: crate::oracle::MAX_CYCLE_DP,
            u_samples: 0,
        };
        match kind {
            ExperimentKind::Threshold | ExperimentKind::Gnm => base,
            ExperimentKind::Poisson => ExperimentConfig { n: 2000, c: vec![0.0], trials: 5000, ..base },
            ExperimentKind::Process => ExperimentConfig { n: 16, c: Vec::new(), trials: 500, ..base },
            ExperimentKind::Expansion => ExperimentConfig { n: 200, c: vec![0.0], trials: 200, u_samples: 100, ..base },
            ExperimentKind::Pab => ExperimentConfig {
                n: 0,
                c: Vec::new(),
                p: (6..=10).rev().map(|k| 2f64.powi(-k)).collect(),
                a: vec![4, 6, 8],
                trials: 10_000,
                ..base
            },
        }
    }

    /// Parses flat `key = value` text; `#` starts a comment and lists are
    /// comma separated. `kind` is required unless `kind` is given.
    pub fn parse(text: &str, kind: Option<ExperimentKind>) -> Result<Self> {
        let mut pairs = Vec::new();
        let mut file_kind = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::input(format!("line {}: expected key = value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            if key == "kind" {
                file_kind = Some(value.parse()?);
            } else {
                pairs.push((lineno + 1, key.to_string(), value.to_string()));
            }
        }
        let kind = match (kind, file_kind) {
            (Some(k), Some(f)) if k != f => {
                return Err(Error::input(format!("config is for {f}, not {k}")));
            }
            (Some(k), _) | (None, Some(k)) => k,
            (None, None) => return Err(Error::input("config does not name its kind")),
        };
        let mut cfg = ExperimentConfig::defaults(kind);
        for (lineno, key, value) in pairs {
            cfg.set(&key, &value).map_err(|e| Error::input(format!("line {lineno}: {e}")))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path, kind: Option<ExperimentKind>) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
        ExperimentConfig::parse(&text, kind)
    }

    /// Sets one field from its textual value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "n" => self.n = scalar(key, value)?,
            "d" => self.d = scalar(key, value)?,
            "c" => self.c = list(key, value)?,
            "p" => self.p = list(key, value)?,
            "a" => self.a = list(key, value)?,
            "trials" => self.trials = scalar(key, value)?,
            "seed" => self.seed = scalar(key, value)?,
            "workers" => self.workers = scalar(key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "budget" => self.budget = Some(scalar(key, value)?),
            "oracle_cutoff" => self.oracle_cutoff = scalar(key, value)?,
            "u_samples" => self.u_samples = scalar(key, value)?,
            other => return Err(Error::input(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::input("trials must be at least 1"));
        }
        if self.workers == 0 {
            return Err(Error::input("workers must be at least 1"));
        }
        if self.d < 2 {
            return Err(Error::input("d must be at least 2"));
        }
        if self.oracle_cutoff > crate::oracle::MAX_CYCLE_DP {
            return Err(Error::input(format!("oracle_cutoff is at most {}", crate::oracle::MAX_CYCLE_DP)));
        }
        match self.kind {
            ExperimentKind::Pab => {
                if self.a.is_empty() || self.p.is_empty() {
                    return Err(Error::input("probe grid needs non-empty a and p"));
                }
                if self.p.iter().any(|p| !(0.0..=1.0).contains(p)) {
                    return Err(Error::input("probe p values must lie in [0, 1]"));
                }
            }
            ExperimentKind::Process => {
                if self.n < self.d {
                    return Err(Error::input("process needs n >= d"));
                }
            }
            _ => {
                if self.c.is_empty() {
                    return Err(Error::input("c grid must be non-empty"));
                }
                if self.n < self.d {
                    return Err(Error::input("need n >= d"));
                }
            }
        }
        Ok(())
    }
}

fn scalar<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| Error::input(format!("{key}: cannot parse {value:?}")))
}

fn list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|s| scalar(key, s)).collect()
}
