//! Flag definitions. Every value-bearing flag is optional at the clap level
//! because a `--config` file may supply it; [`mod@crate::run`] enforces
//! presence after merging.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use deleg_core::{Mode, Stance};

#[derive(Parser, Debug)]
#[command(
    name = "deleg",
    version,
    about = "Decide between AI generation, AI generation plus validation, and waiting for the expert",
    after_help = "Exit codes: 0 success, 2 invalid parameters, 3 I/O or ingestion failure."
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Expected values, thresholds, and delegation conditions at one point
    Evaluate(PointArgs),
    /// Choose the best mode and report per-mode margins
    Policy(PointArgs),
    /// Classify a point into region A/B/C with its FS status
    Classify(PointArgs),
    /// Region grid over (alpha, beta), or threshold curves with --curves
    Sweep(SweepArgs),
    /// Seeded Monte Carlo run of one mode, compared against the closed form
    Simulate(SimulateArgs),
    /// Estimate alpha/beta from a trial log and decide under uncertainty
    Estimate(EstimateArgs),
}

#[derive(Args, Debug, Clone)]
pub struct CommonOpts {
    /// Output format (default json; DELEG_FORMAT overrides the default)
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write output to this file instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// JSON file supplying defaults for this subcommand's flags
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct ModelOpts {
    /// Probability the AI-generated result is correct, in (0, 1)
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Probability a validation verdict is right, in (0, 1)
    #[arg(long)]
    pub beta: Option<f64>,
    /// Guaranteed delayed profit through the human expert
    #[arg(long)]
    pub v: Option<f64>,
    /// Payoff for acting on a correct result [default: 1]
    #[arg(long)]
    pub gain: Option<f64>,
    /// Payoff for acting on an incorrect result [default: -1]
    #[arg(long)]
    pub loss: Option<f64>,
}

#[derive(Args, Debug)]
pub struct PointArgs {
    #[command(flatten)]
    pub model: ModelOpts,
    #[command(flatten)]
    pub common: CommonOpts,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Emit the beta-threshold curves instead of a region grid
    #[arg(long)]
    pub curves: bool,
    #[arg(long)]
    pub v: Option<f64>,
    /// Payoff for acting on a correct result [default: 1]
    #[arg(long)]
    pub gain: Option<f64>,
    /// Payoff for acting on an incorrect result [default: -1]
    #[arg(long)]
    pub loss: Option<f64>,
    /// Alpha range as start:stop:steps, e.g. 0.05:0.95:19 (grid mode)
    #[arg(long)]
    pub alpha: Option<String>,
    /// Beta range as start:stop:steps (grid mode)
    #[arg(long)]
    pub beta: Option<String>,
    /// Number of sampled accuracies (curves mode)
    #[arg(long)]
    pub samples: Option<usize>,
    #[command(flatten)]
    pub common: CommonOpts,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Process to simulate
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[command(flatten)]
    pub model: ModelOpts,
    /// Number of trials
    #[arg(long)]
    pub trials: Option<u64>,
    /// RNG seed; required — runs are reproducible by construction
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads (results do not depend on this)
    #[arg(long)]
    pub threads: Option<usize>,
    #[command(flatten)]
    pub common: CommonOpts,
}

#[derive(Args, Debug)]
pub struct EstimateArgs {
    /// Trial log: JSON Lines, or CSV when the extension is .csv
    #[arg(long)]
    pub log: Option<PathBuf>,
    /// Confidence level for the Wilson intervals [default: 0.95]
    #[arg(long)]
    pub confidence: Option<f64>,
    /// How estimates enter the decision [default: point]
    #[arg(long, value_enum)]
    pub stance: Option<StanceArg>,
    /// Guaranteed delayed profit through the human expert
    #[arg(long)]
    pub v: Option<f64>,
    /// Payoff for acting on a correct result [default: 1]
    #[arg(long)]
    pub gain: Option<f64>,
    /// Payoff for acting on an incorrect result [default: -1]
    #[arg(long)]
    pub loss: Option<f64>,
    #[command(flatten)]
    pub common: CommonOpts,
}

#[derive(ValueEnum, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    Table,
}

#[derive(ValueEnum, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Engineer,
    Ps,
    Fs,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Engineer => Mode::Engineer,
            ModeArg::Ps => Mode::PartialSupport,
            ModeArg::Fs => Mode::FullSupport,
        }
    }
}

#[derive(ValueEnum, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum StanceArg {
    Point,
    Conservative,
}

impl From<StanceArg> for Stance {
    fn from(s: StanceArg) -> Stance {
        match s {
            StanceArg::Point => Stance::PointEstimate,
            StanceArg::Conservative => Stance::ConservativeLowerBound,
        }
    }
}
