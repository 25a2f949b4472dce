use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use weak_ham_lab::harness::{self, classify, ExperimentConfig, ExperimentKind};
use weak_ham_lab::oracle::exact_weak_hamiltonian;
use weak_ham_lab::randmodels::{m_from_c, p_from_c, sample_gnm, sample_gnp, GnmParams, GnpParams, SeededRng};
use weak_ham_lab::{Error, Hypergraph, Result};

#[derive(Parser)]
#[command(name = "weak-ham-lab", version, about = "Weak Hamilton cycles in random hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Gnp,
    Gnm,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Heuristic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Threshold,
    Gnm,
    Poisson,
    Process,
    Expansion,
    Pab,
}

impl From<Kind> for ExperimentKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Threshold => ExperimentKind::Threshold,
            Kind::Gnm => ExperimentKind::Gnm,
            Kind::Poisson => ExperimentKind::Poisson,
            Kind::Process => ExperimentKind::Process,
            Kind::Expansion => ExperimentKind::Expansion,
            Kind::Pab => ExperimentKind::Pab,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sample a random hypergraph and write it in text form.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value = "gnp")]
        model: Model,
        /// Edge probability (gnp).
        #[arg(long, conflicts_with_all = ["c", "m"])]
        p: Option<f64>,
        /// Threshold offset; sets p or m.
        #[arg(long, allow_negative_numbers = true, conflicts_with = "m")]
        c: Option<f64>,
        /// Number of edges (gnm).
        #[arg(long)]
        m: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide weak Hamiltonicity of a hypergraph file; prints JSON.
    Check {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "exact")]
        mode: Mode,
        /// Rotation budget for the heuristic.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run an experiment and write its CSV table.
    Exp {
        #[arg(value_enum)]
        kind: Kind,
        /// Flat key = value file; flags below override it.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        /// Comma-separated c grid.
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        /// Comma-separated probe probabilities.
        #[arg(long)]
        p: Option<String>,
        /// Comma-separated probe sizes of A.
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        oracle_cutoff: Option<usize>,
        #[arg(long)]
        u_samples: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-trial records (threshold and gnm only).
        #[arg(long)]
        records: Option<PathBuf>,
    },
    /// Render a threshold or gnm CSV as SVG.
    Plot {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn write(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Input(format!("{}: {e}", p.display()))),
        None => stdout(text),
    }
}

/// A closed reader (`| head`) ends output quietly.
fn stdout(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn gen(
    n: usize,
    d: usize,
    model: Model,
    p: Option<f64>,
    c: Option<f64>,
    m: Option<u64>,
    seed: u64,
) -> Result<Hypergraph> {
    let mut rng = SeededRng::new(seed, 0).rng();
    match model {
        Model::Gnp => {
            let p = match (p, c) {
                (Some(p), _) => p,
                (None, Some(c)) => p_from_c(n, d, c).value,
                (None, None) => return Err(Error::Input("gnp needs --p or --c".into())),
            };
            sample_gnp(&GnpParams::new(n, d, p)?, &mut rng)
        }
        Model::Gnm => {
            let m = match (m, c) {
                (Some(m), _) => m,
                (None, Some(c)) => m_from_c(n, d, c),
                (None, None) => return Err(Error::Input("gnm needs --m or --c".into())),
            };
            sample_gnm(&GnmParams::new(n, d, m)?, &mut rng)
        }
    }
}

fn check(h: &Hypergraph, mode: Mode, budget: Option<u64>, seed: u64) -> Result<serde_json::Value> {
    Ok(match mode {
        Mode::Exact => exact_weak_hamiltonian(h)?.to_json(h),
        Mode::Heuristic => {
            let v = classify(h, 0, budget, seed);
            json!({
                "answer": v.weak_ham.as_str(),
                "method": "heuristic",
                "decided_by": v.decided_by.to_string(),
                "rotations": v.rotations,
                "witness": v.witness.map_or(serde_json::Value::Null, |w| w.to_json(h)),
            })
        }
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Gen { n, d, model, p, c, m, seed, out } => {
            let h = gen(n, d, model, p, c, m, seed)?;
            write(out.as_deref(), &h.to_text())
        }
        Command::Check { input, mode, budget, seed } => {
            let h = Hypergraph::from_text(&read(&input)?)?;
            let verdict = check(&h, mode, budget, seed)?;
            stdout(&format!("{}\n", serde_json::to_string_pretty(&verdict)?))
        }
        Command::Exp {
            kind,
            config,
            n,
            d,
            c,
            p,
            a,
            trials,
            seed,
            workers,
            budget,
            oracle_cutoff,
            u_samples,
            out,
            records,
        } => {
            let kind = ExperimentKind::from(kind);
            let mut cfg = match &config {
                Some(path) => ExperimentConfig::load(path, Some(kind))?,
                None => ExperimentConfig::defaults(kind),
            };
            let overrides: [(&str, Option<String>); 11] = [
                ("n", n.map(|v| v.to_string())),
                ("d", d.map(|v| v.to_string())),
                ("c", c),
                ("p", p),
                ("a", a),
                ("trials", trials.map(|v| v.to_string())),
                ("seed", seed.map(|v| v.to_string())),
                ("workers", workers.map(|v| v.to_string())),
                ("budget", budget.map(|v| v.to_string())),
                ("oracle_cutoff", oracle_cutoff.map(|v| v.to_string())),
                ("u_samples", u_samples.map(|v| v.to_string())),
            ];
            for (key, value) in overrides {
                if let Some(value) = value {
                    cfg.set(key, &value)?;
                }
            }
            if let Some(out) = out {
                cfg.out = Some(out);
            }
            cfg.validate()?;
            let (table, record_csv) = match kind {
                ExperimentKind::Threshold => {
                    let o = harness::run_threshold(&cfg)?;
                    let r = o.records_csv();
                    (o.table, Some(r))
                }
                ExperimentKind::Gnm => {
                    let o = harness::run_gnm_threshold(&cfg)?;
                    let r = o.records_csv();
                    (o.table, Some(r))
                }
                _ => (harness::run(&cfg)?, None),
            };
            if let (Some(path), Some(text)) = (&records, &record_csv) {
                write(Some(path), text)?;
            } else if records.is_some() {
                return Err(Error::Input(format!("{kind} has no per-trial records")));
            }
            write(cfg.out.as_deref(), &table.to_csv())
        }
        Command::Plot { input, out } => {
            let svg = harness::emit_plot(&read(&input)?)?;
            write(Some(&out), &svg)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
