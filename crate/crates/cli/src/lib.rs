//! Command-line front end for twinlab and the experiment harness behind the
//! `experiment` subcommand.

pub mod experiment;

use std::ffi::OsString;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use twinlab::numerics::{
    binom_lower_bound, binom_upper_bound, default_slack, predicted_dense_width, predicted_lower_dense,
    predicted_sparse_lower, predicted_sparse_upper, Prediction, TailBoundQuery,
};
use twinlab::randgen::{gnp, random_cograph, RandomGraphSpec};
use twinlab::solver::{exact_twin_width, greedy_sequence};
use twinlab::strategy::{run_paper_schedule_owned, schedule_params, ScheduleOptions};
use twinlab::{apply_sequence, read_sequence, verify_width_owned, write_sequence, Trigraph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "twinlab", version, about = "Twin-width of trigraphs: contraction, solvers and random-graph experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a seeded random graph.
    Gen(GenArgs),
    /// Contract one pair and print the resulting trigraph.
    Contract(ContractArgs),
    /// Replay a sequence and check its width against a bound.
    Verify(VerifyArgs),
    /// Exact twin-width by branch and bound (at most 64 labels).
    Exact(SolveArgs),
    /// Greedy contraction sequence.
    Greedy(GreedyArgs),
    /// Run the dense-graph contraction schedule on a fresh G(n, p).
    PaperSchedule(ScheduleArgs),
    /// Predicted widths as JSON.
    #[command(subcommand)]
    Predict(PredictCommand),
    /// Binomial lower-tail bounds as JSON.
    Bounds(BoundsArgs),
    /// Run a JSON-configured experiment and write its CSV.
    Experiment(ExperimentArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Model {
    Gnp,
    Cograph,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long, value_enum, default_value_t = Model::Gnp)]
    pub model: Model,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ContractArgs {
    pub graph: PathBuf,
    #[arg(long)]
    pub u: usize,
    #[arg(long)]
    pub v: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    pub graph: PathBuf,
    pub sequence: PathBuf,
    #[arg(long)]
    pub d: usize,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    pub graph: PathBuf,
    /// Search-node budget; the result is marked inexact when it runs out.
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
    #[arg(long)]
    pub out_seq: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GreedyArgs {
    pub graph: PathBuf,
    #[arg(long)]
    pub out_seq: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ScheduleArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 0.1)]
    pub eps: f64,
    #[arg(long, default_value_t = 0.25)]
    pub delta: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = ScheduleOptions::default().frozen_slack)]
    pub frozen_slack: f64,
    #[arg(long)]
    pub out_seq: Option<PathBuf>,
    /// Per-step CSV: phase,step,max_rdeg,frozen_count.
    #[arg(long)]
    pub out_trace: Option<PathBuf>,
    /// Regenerate the graph and replay the sequence; exit 2 if it fails.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Subcommand, Debug)]
pub enum PredictCommand {
    /// 2pqn - sqrt(6pq(1-2pq) n ln n).
    Dense {
        #[arg(long)]
        n: f64,
        #[arg(long)]
        p: f64,
    },
    /// High-probability lower bound with slack g (default n^0.55).
    LowerDense {
        #[arg(long)]
        n: f64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        g: Option<f64>,
    },
    /// Upper bound for any graph with m edges.
    SparseUpper {
        #[arg(long)]
        m: f64,
    },
    /// Lower bound in the sparse regime.
    SparseLower {
        #[arg(long)]
        n: f64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        delta: f64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TailSide {
    Upper,
    Lower,
    Exact,
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    /// Which value of Pr[Bin(n, p) <= (p - eps) n] to print.
    #[arg(value_enum)]
    pub side: TailSide,
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub p: f64,
    #[arg(long)]
    pub eps: f64,
}

#[derive(Args, Debug)]
pub struct ExperimentArgs {
    pub config: PathBuf,
}

/// What a successful command asks the process to exit with.
#[derive(Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    VerificationFailed,
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn print_json(value: &serde_json::Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn read_graph(path: &PathBuf) -> Result<Trigraph> {
    Trigraph::read(path).with_context(|| format!("reading graph {}", path.display()))
}

fn prediction_json(p: &Prediction) -> serde_json::Value {
    json!({
        "formula": p.formula,
        "inputs": p.inputs,
        "value": p.value,
        "omitted_terms": p.omitted_terms,
        "clamped": p.clamped,
    })
}

pub fn execute(cli: Cli) -> Result<Status> {
    match cli.command {
        Command::Gen(a) => {
            let g = match a.model {
                Model::Gnp => gnp(RandomGraphSpec::new(a.n, a.p, a.seed)?)?,
                Model::Cograph => random_cograph(a.n, a.seed)?,
            };
            emit(&g.to_text(), a.out.as_ref())?;
        }
        Command::Contract(a) => {
            let g = read_graph(&a.graph)?.contract(a.u, a.v)?;
            emit(&g.to_text(), a.out.as_ref())?;
        }
        Command::Verify(a) => {
            let g = read_graph(&a.graph)?;
            let seq = read_sequence(&a.sequence).with_context(|| format!("reading {}", a.sequence.display()))?;
            let trace = apply_sequence(&g, &seq)?;
            let ok = trace.is_full() && trace.width <= a.d;
            print_json(&json!({
                "width": trace.width,
                "d": a.d,
                "complete": trace.is_full(),
                "ok": ok,
            }))?;
            if !ok {
                return Ok(Status::VerificationFailed);
            }
        }
        Command::Exact(a) => {
            let g = read_graph(&a.graph)?;
            let r = exact_twin_width(&g, a.budget)?;
            if let Some(path) = &a.out_seq {
                write_sequence(path, &r.witness)?;
            }
            print_json(&json!({
                "width": r.value,
                "exact": r.exact,
                "lower_bound": r.lower_bound,
                "nodes": r.nodes,
            }))?;
        }
        Command::Greedy(a) => {
            let g = read_graph(&a.graph)?;
            let (seq, width) = greedy_sequence(&g);
            if let Some(path) = &a.out_seq {
                write_sequence(path, &seq)?;
            }
            print_json(&json!({ "width": width, "steps": seq.len() }))?;
        }
        Command::PaperSchedule(a) => return paper_schedule(a),
        Command::Predict(c) => {
            let p = match c {
                PredictCommand::Dense { n, p } => predicted_dense_width(n, p)?,
                PredictCommand::LowerDense { n, p, g } => predicted_lower_dense(n, p, g.unwrap_or_else(|| default_slack(n)))?,
                PredictCommand::SparseUpper { m } => predicted_sparse_upper(m)?,
                PredictCommand::SparseLower { n, p, delta } => predicted_sparse_lower(n, p, delta)?,
            };
            print_json(&prediction_json(&p))?;
        }
        Command::Bounds(a) => {
            let q = TailBoundQuery { n: a.n, p: a.p, eps: a.eps };
            let (formula, value, omitted) = match a.side {
                TailSide::Upper => (
                    "exp(-n eps^2/(2pq) + n eps^3/(2 p^2 q^2))",
                    binom_upper_bound(&q)?,
                    "none; requires 0 < eps <= 3p/10",
                ),
                TailSide::Lower => (
                    "exp(-n eps^2/(2pq) - 3 sqrt(n eps^2)/(2pq) - 4 n eps^3/(p^2 q^2)) / (2 sqrt 2)",
                    binom_lower_bound(&q)?,
                    "none; requires n >= 4 and 1/sqrt(n) <= eps <= min(p/2, 1-p)",
                ),
                TailSide::Exact => ("sum_{i <= (p-eps)n} C(n,i) p^i q^(n-i)", q.exact()?, "none"),
            };
            print_json(&json!({
                "formula": formula,
                "inputs": { "n": a.n, "p": a.p, "eps": a.eps },
                "value": value,
                "omitted_terms": omitted,
            }))?;
        }
        Command::Experiment(a) => {
            let cfg = experiment::ExperimentConfig::load(&a.config)?;
            let rows = experiment::run_to_file(&cfg)?;
            let failed = rows.iter().filter(|r| r.status.starts_with("error")).count();
            print_json(&json!({
                "rows": rows.len(),
                "failed": failed,
                "output": cfg.output,
            }))?;
        }
    }
    Ok(Status::Ok)
}

fn paper_schedule(a: ScheduleArgs) -> Result<Status> {
    let params = schedule_params(a.n, a.p, a.eps, a.delta)?;
    let spec = RandomGraphSpec::new(a.n, a.p, a.seed)?;
    let options = ScheduleOptions {
        frozen_slack: a.frozen_slack,
        ..ScheduleOptions::default()
    };
    let (seq, trace) = run_paper_schedule_owned(gnp(spec)?, &params, &options)?;
    if let Some(path) = &a.out_seq {
        write_sequence(path, &seq)?;
    }
    if let Some(path) = &a.out_trace {
        let file = std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
        trace.write_csv(std::io::BufWriter::new(file))?;
    }
    // the schedule consumed its graph; regenerate rather than keep a copy
    let verified = if a.verify {
        Some(verify_width_owned(gnp(spec)?, &seq, trace.width)?)
    } else {
        None
    };
    print_json(&json!({
        "n": a.n,
        "p": a.p,
        "eps": a.eps,
        "delta": a.delta,
        "seed": a.seed,
        "width": trace.width,
        "lemma_bound": params.lemma_bound(),
        "phase_ends": trace.phase_ends,
        "a_pairs": trace.a_pairs.len(),
        "a_shortfall": trace.a_shortfall,
        "frozen": trace.l_size(),
        "skipped": trace.skipped.len(),
        "retried": trace.retried.len(),
        "verified": verified,
        "params": params,
    }))?;
    Ok(if verified == Some(false) {
        Status::VerificationFailed
    } else {
        Status::Ok
    })
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Usage errors count as domain errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_DOMAIN } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(Status::Ok) => EXIT_OK,
        Ok(Status::VerificationFailed) => EXIT_VERIFY,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_DOMAIN
        }
    }
}
