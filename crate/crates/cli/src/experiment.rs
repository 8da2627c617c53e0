//! Seeded Monte-Carlo experiments over a grid of `G(n, p)` points.

use std::collections::BTreeSet;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use twinlab::numerics::{default_slack, predicted_lower_dense, predicted_sparse_upper, strongest_certificate};
use twinlab::randgen::{gnp, RandomGraphSpec};
use twinlab::solver::{exact_twin_width, greedy_sequence};
use twinlab::strategy::{run_paper_schedule_owned, schedule_params, ScheduleOptions};
use twinlab::{write_sequence, ContractionSequence, Trigraph};

pub const CSV_HEADER: [&str; 10] = [
    "n",
    "p",
    "seed",
    "strategy",
    "status",
    "width",
    "predicted_upper",
    "predicted_lower",
    "certified_lb",
    "runtime_ms",
];

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GridPoint {
    pub n: usize,
    pub p: f64,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyKind {
    Greedy,
    Exact,
    PaperSchedule,
}

impl fmt::Display for StrategyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrategyKind::Greedy => "greedy",
            StrategyKind::Exact => "exact",
            StrategyKind::PaperSchedule => "paper-schedule",
        })
    }
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct ScheduleConfig {
    pub eps: f64,
    pub delta: f64,
    pub frozen_slack: f64,
}

impl Default for ScheduleConfig {
    fn default() -> Self {
        ScheduleConfig {
            eps: 0.1,
            delta: 0.25,
            frozen_slack: ScheduleOptions::default().frozen_slack,
        }
    }
}

fn default_exact_cap() -> usize {
    twinlab::solver::EXACT_MAX_LABEL
}

fn default_node_budget() -> u64 {
    20_000
}

fn default_certificate_cap() -> usize {
    2000
}

fn default_workers() -> usize {
    1
}

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub grid: Vec<GridPoint>,
    pub strategies: Vec<StrategyKind>,
    pub seeds: Vec<u64>,
    /// `exact` runs only when `n` is at most this.
    #[serde(default = "default_exact_cap")]
    pub exact_cap: usize,
    /// Search-node budget per exact solve.
    #[serde(default = "default_node_budget")]
    pub node_budget: u64,
    /// The pair-count certificate is computed only up to this `n`.
    #[serde(default = "default_certificate_cap")]
    pub certificate_cap: usize,
    #[serde(default = "default_workers")]
    pub workers: usize,
    pub output: PathBuf,
    #[serde(default)]
    pub sequence_dir: Option<PathBuf>,
    #[serde(default)]
    pub schedule: ScheduleConfig,
}

impl ExperimentConfig {
    /// Reads a config file. Relative paths inside it are taken relative to
    /// the file's directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let mut cfg: ExperimentConfig =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        let base = path.parent().unwrap_or(Path::new(""));
        cfg.output = base.join(&cfg.output);
        if let Some(dir) = &cfg.sequence_dir {
            cfg.sequence_dir = Some(base.join(dir));
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for &s in &self.seeds {
            if !seen.insert(s) {
                bail!("seed {s} appears more than once");
            }
        }
        let mut kinds = BTreeSet::new();
        for k in &self.strategies {
            if !kinds.insert(k.to_string()) {
                bail!("strategy {k} appears more than once");
            }
        }
        for pt in &self.grid {
            RandomGraphSpec::new(pt.n, pt.p, 0).with_context(|| format!("grid point n = {}, p = {}", pt.n, pt.p))?;
        }
        if self.workers == 0 {
            bail!("workers must be at least 1");
        }
        Ok(())
    }
}

/// One CSV row. Empty optional fields are written as empty cells.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialRow {
    pub n: usize,
    pub p: f64,
    pub seed: u64,
    pub strategy: StrategyKind,
    pub status: String,
    pub width: Option<usize>,
    pub predicted_upper: Option<f64>,
    pub predicted_lower: Option<f64>,
    pub certified_lb: Option<f64>,
    pub runtime_ms: u128,
}

impl TrialRow {
    pub fn record(&self) -> [String; 10] {
        let f = |x: Option<f64>| x.map_or(String::new(), |v| format!("{v:.6}"));
        [
            self.n.to_string(),
            format!("{:.6}", self.p),
            self.seed.to_string(),
            self.strategy.to_string(),
            self.status.clone(),
            self.width.map_or(String::new(), |w| w.to_string()),
            f(self.predicted_upper),
            f(self.predicted_lower),
            f(self.certified_lb),
            self.runtime_ms.to_string(),
        ]
    }
}

/// Sequence file name for a trial.
pub fn sequence_file_name(strategy: StrategyKind, n: usize, p: f64, seed: u64) -> String {
    format!("{strategy}-n{n}-p{p:.6}-seed{seed}.seq")
}

struct Outcome {
    status: String,
    width: Option<usize>,
    sequence: Option<ContractionSequence>,
}

impl Outcome {
    fn done(status: &str, width: usize, seq: ContractionSequence) -> Self {
        Outcome {
            status: status.into(),
            width: Some(width),
            sequence: Some(seq),
        }
    }

    fn failed(status: String) -> Self {
        Outcome {
            status,
            width: None,
            sequence: None,
        }
    }
}

fn run_strategy(cfg: &ExperimentConfig, kind: StrategyKind, g: &Trigraph, p: f64) -> Outcome {
    let n = g.n();
    match kind {
        StrategyKind::Greedy => {
            let (seq, w) = greedy_sequence(g);
            Outcome::done("ok", w, seq)
        }
        StrategyKind::Exact if n > cfg.exact_cap => Outcome::failed(format!("skipped: n > exact_cap = {}", cfg.exact_cap)),
        StrategyKind::Exact => match exact_twin_width(g, cfg.node_budget) {
            Ok(r) if r.exact => Outcome::done("ok", r.value, r.witness),
            // the best width found so far is still a valid upper bound
            Ok(r) => Outcome::done("budget_exhausted", r.value, r.witness),
            Err(e) => Outcome::failed(format!("error: {e}")),
        },
        StrategyKind::PaperSchedule => {
            let s = &cfg.schedule;
            let params = match schedule_params(n, p, s.eps, s.delta) {
                Ok(params) => params,
                Err(e) => return Outcome::failed(format!("error: {e}")),
            };
            let options = ScheduleOptions {
                frozen_slack: s.frozen_slack,
                ..ScheduleOptions::default()
            };
            match run_paper_schedule_owned(g.clone(), &params, &options) {
                Ok((seq, trace)) => Outcome::done("ok", trace.width, seq),
                Err(e) => Outcome::failed(format!("error: {e}")),
            }
        }
    }
}

/// All rows for one `(point, seed)`: the graph is generated once and shared
/// by every strategy.
fn run_unit(cfg: &ExperimentConfig, pt: GridPoint, seed: u64) -> Vec<TrialRow> {
    let row = |strategy, status: String| TrialRow {
        n: pt.n,
        p: pt.p,
        seed,
        strategy,
        status,
        width: None,
        predicted_upper: None,
        predicted_lower: None,
        certified_lb: None,
        runtime_ms: 0,
    };
    let g = match RandomGraphSpec::new(pt.n, pt.p, seed).and_then(gnp) {
        Ok(g) => g,
        Err(e) => return cfg.strategies.iter().map(|&k| row(k, format!("error: {e}"))).collect(),
    };
    let upper = predicted_sparse_upper(g.black_edge_count() as f64).ok().map(|x| x.value);
    let nf = pt.n as f64;
    let lower = predicted_lower_dense(nf, pt.p, default_slack(nf)).ok().map(|x| x.value);
    let certified = if pt.n <= cfg.certificate_cap {
        strongest_certificate(&g).ok().flatten().and_then(|c| c.certified_value)
    } else {
        None
    };

    cfg.strategies
        .iter()
        .map(|&kind| {
            let start = Instant::now();
            let mut out = run_strategy(cfg, kind, &g, pt.p);
            let runtime_ms = start.elapsed().as_millis();
            if let (Some(dir), Some(seq)) = (&cfg.sequence_dir, &out.sequence) {
                let path = dir.join(sequence_file_name(kind, pt.n, pt.p, seed));
                if let Err(e) = write_sequence(&path, seq) {
                    out.status = format!("error: writing {}: {e}", path.display());
                }
            }
            TrialRow {
                width: out.width,
                predicted_upper: upper,
                predicted_lower: lower,
                certified_lb: certified,
                runtime_ms,
                ..row(kind, out.status)
            }
        })
        .collect()
}

/// Runs every trial on a pool of `cfg.workers` threads. Rows come back in
/// grid order, then seed order, then strategy order, whatever the
/// scheduling.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<TrialRow>> {
    cfg.validate()?;
    if let Some(dir) = &cfg.sequence_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    }
    let units: Vec<(GridPoint, u64)> = cfg
        .grid
        .iter()
        .flat_map(|&pt| cfg.seeds.iter().map(move |&s| (pt, s)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.workers).build()?;
    let rows = pool.install(|| {
        units
            .par_iter()
            .map(|&(pt, seed)| run_unit(cfg, pt, seed))
            .collect::<Vec<_>>()
    });
    Ok(rows.into_iter().flatten().collect())
}

pub fn write_rows<W: Write>(rows: &[TrialRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in rows {
        w.write_record(r.record())?;
    }
    w.flush()?;
    Ok(())
}

/// Runs the experiment and writes the CSV to `cfg.output`.
pub fn run_to_file(cfg: &ExperimentConfig) -> Result<Vec<TrialRow>> {
    let rows = run_experiment(cfg)?;
    if let Some(parent) = cfg.output.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    let file = std::fs::File::create(&cfg.output).with_context(|| format!("creating {}", cfg.output.display()))?;
    write_rows(&rows, std::io::BufWriter::new(file))?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(json: &str) -> ExperimentConfig {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn defaults_and_validation() {
        let c = config(r#"{"strategies": ["greedy"], "seeds": [1, 2], "output": "x.csv"}"#);
        assert!(c.grid.is_empty());
        assert_eq!(c.exact_cap, 64);
        assert_eq!(c.workers, 1);
        assert_eq!(c.schedule, ScheduleConfig::default());
        c.validate().unwrap();

        let dup = config(r#"{"strategies": ["greedy"], "seeds": [3, 1, 3], "output": "x.csv"}"#);
        assert!(dup.validate().unwrap_err().to_string().contains("seed 3"));
        let bad_p = config(r#"{"grid": [{"n": 5, "p": 1.5}], "strategies": [], "seeds": [], "output": "x"}"#);
        assert!(bad_p.validate().is_err());
        assert!(serde_json::from_str::<ExperimentConfig>(
            r#"{"strategies": ["annealing"], "seeds": [], "output": "x"}"#
        )
        .is_err());
    }

    #[test]
    fn rows_are_ordered_and_gated() {
        let c = config(
            r#"{"grid": [{"n": 8, "p": 0.5}, {"n": 70, "p": 0.5}], "strategies": ["exact", "greedy"],
                "seeds": [5, 4], "workers": 2, "output": "x.csv", "node_budget": 100}"#,
        );
        let rows = run_experiment(&c).unwrap();
        let keys: Vec<(usize, u64, String)> = rows.iter().map(|r| (r.n, r.seed, r.strategy.to_string())).collect();
        assert_eq!(
            keys,
            vec![
                (8, 5, "exact".into()),
                (8, 5, "greedy".into()),
                (8, 4, "exact".into()),
                (8, 4, "greedy".into()),
                (70, 5, "exact".into()),
                (70, 5, "greedy".into()),
                (70, 4, "exact".into()),
                (70, 4, "greedy".into()),
            ]
        );
        assert!(rows[4].status.starts_with("skipped"));
        assert_eq!(rows[4].width, None);
        assert_eq!(rows[5].status, "ok");
        assert!(rows[0].width <= rows[1].width);
    }

    #[test]
    fn schedule_failures_become_rows() {
        let c = config(r#"{"grid": [{"n": 30, "p": 0.5}], "strategies": ["paper-schedule"], "seeds": [1], "output": "x"}"#);
        let rows = run_experiment(&c).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].status.starts_with("error:"), "{}", rows[0].status);
        let mut buf = Vec::new();
        write_rows(&rows, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 2);
    }
}
