//! Seeded Monte Carlo simulation of the three delegation processes.
//!
//! The simulator exists to verify the closed forms in [`crate::policy`] and
//! to expose the outcome-level statistics they hide (how often validation
//! wrongly rejects a correct result, say). It mirrors the model exactly:
//! one generation/validation cycle per trial, no retries.
//!
//! # Determinism
//!
//! Identical `(seed, config)` produce bit-identical results on every run,
//! on every machine, at every thread count. Three choices make that hold:
//!
//! - **RNG**: ChaCha8 (`rand_chacha`, version-pinned in the workspace
//!   manifest). Trials are partitioned into fixed chunks of [`CHUNK_TRIALS`];
//!   chunk `c` draws from the ChaCha8 stream `c` of the run seed, so the
//!   randomness of a trial is a pure function of `(seed, trial index)` and
//!   never depends on scheduling.
//! - **Integer reduction**: per-chunk tallies are outcome *counts*; summing
//!   them is exact and order-free.
//! - **Exact statistics**: each mode's payoff takes finitely many values, so
//!   the mean and standard error are computed from the final counts rather
//!   than accumulated trial by trial.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{DelegationParams, Mode, Utility};

/// Trials per RNG stream. Fixed: changing it would change which stream a
/// trial draws from, breaking seed-stability across releases.
pub const CHUNK_TRIALS: u64 = 1 << 16;

/// One simulation run: which process to simulate, for how many trials,
/// under which seed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub params: DelegationParams,
    pub mode: Mode,
    pub trials: u64,
    pub seed: u64,
}

/// Outcome tallies of a run. Counts sum to the configured trial count;
/// the engineer's deterministic process has nothing to tally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode")]
pub enum OutcomeCounts {
    #[serde(rename = "engineer")]
    Engineer,
    #[serde(rename = "ps")]
    PartialSupport { correct: u64, incorrect: u64 },
    #[serde(rename = "fs")]
    FullSupport {
        true_accept: u64,
        false_accept: u64,
        false_reject: u64,
        true_reject: u64,
    },
}

impl OutcomeCounts {
    pub fn total(&self) -> u64 {
        match *self {
            OutcomeCounts::Engineer => 0,
            OutcomeCounts::PartialSupport { correct, incorrect } => correct + incorrect,
            OutcomeCounts::FullSupport {
                true_accept,
                false_accept,
                false_reject,
                true_reject,
            } => true_accept + false_accept + false_reject + true_reject,
        }
    }
}

/// Result of [`simulate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationResult {
    pub config: SimulationConfig,
    pub counts: OutcomeCounts,
    pub mean_payoff: Utility,
    /// Sample standard deviation over sqrt(trials); zero for deterministic
    /// processes and for single-trial runs.
    pub std_error: f64,
    /// Wall-clock duration of the run. Not serialized: serialized results
    /// must be identical across runs of the same seed.
    #[serde(skip, default)]
    pub elapsed: Duration,
}

/// Runs the configured process.
///
/// Partial support draws one Bernoulli(`alpha`) correctness per trial and
/// pays `gain` or `loss`. Full support draws correctness, then a verdict —
/// accept with probability `beta` if correct, `1 - beta` if incorrect — and
/// pays only on accepted results (zero on rejection). The engineer pays `v`
/// deterministically.
pub fn simulate(config: &SimulationConfig) -> Result<SimulationResult> {
    if config.trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    if config.mode == Mode::FullSupport {
        config.params.require_beta()?;
    }

    let started = Instant::now();
    let counts = match config.mode {
        Mode::Engineer => OutcomeCounts::Engineer,
        Mode::PartialSupport => run_ps(config),
        Mode::FullSupport => run_fs(config),
    };
    debug_assert!(config.mode == Mode::Engineer || counts.total() == config.trials);

    let (mean, std_error) = summarize(config, &counts);
    Ok(SimulationResult {
        config: *config,
        counts,
        mean_payoff: Utility::new(mean),
        std_error,
        elapsed: started.elapsed(),
    })
}

fn chunk_rng(seed: u64, chunk: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk);
    rng
}

fn chunk_bounds(trials: u64, chunk: u64) -> u64 {
    (trials - chunk * CHUNK_TRIALS).min(CHUNK_TRIALS)
}

fn run_ps(config: &SimulationConfig) -> OutcomeCounts {
    let alpha = config.params.alpha();
    let chunks = config.trials.div_ceil(CHUNK_TRIALS);
    let correct: u64 = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(config.seed, c);
            let mut hits = 0u64;
            for _ in 0..chunk_bounds(config.trials, c) {
                if rng.random::<f64>() < alpha {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    OutcomeCounts::PartialSupport {
        correct,
        incorrect: config.trials - correct,
    }
}

#[derive(Default, Clone, Copy)]
struct FsTally {
    true_accept: u64,
    false_accept: u64,
    false_reject: u64,
    true_reject: u64,
}

impl FsTally {
    fn merge(self, other: FsTally) -> FsTally {
        FsTally {
            true_accept: self.true_accept + other.true_accept,
            false_accept: self.false_accept + other.false_accept,
            false_reject: self.false_reject + other.false_reject,
            true_reject: self.true_reject + other.true_reject,
        }
    }
}

fn run_fs(config: &SimulationConfig) -> OutcomeCounts {
    let alpha = config.params.alpha();
    let beta = config.params.beta().expect("checked by simulate");
    let chunks = config.trials.div_ceil(CHUNK_TRIALS);
    let tally = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(config.seed, c);
            let mut t = FsTally::default();
            for _ in 0..chunk_bounds(config.trials, c) {
                let correct = rng.random::<f64>() < alpha;
                let accept_prob = if correct { beta } else { 1.0 - beta };
                let accepted = rng.random::<f64>() < accept_prob;
                match (correct, accepted) {
                    (true, true) => t.true_accept += 1,
                    (false, true) => t.false_accept += 1,
                    (true, false) => t.false_reject += 1,
                    (false, false) => t.true_reject += 1,
                }
            }
            t
        })
        .reduce(FsTally::default, FsTally::merge);
    OutcomeCounts::FullSupport {
        true_accept: tally.true_accept,
        false_accept: tally.false_accept,
        false_reject: tally.false_reject,
        true_reject: tally.true_reject,
    }
}

/// Mean and standard error from the outcome counts. Payoffs take finitely
/// many values, so both are exact functions of the counts.
fn summarize(config: &SimulationConfig, counts: &OutcomeCounts) -> (f64, f64) {
    let n = config.trials as f64;
    let (gain, loss) = (config.params.gain(), config.params.loss());
    let (sum, sum_sq) = match *counts {
        OutcomeCounts::Engineer => return (config.params.v(), 0.0),
        OutcomeCounts::PartialSupport { correct, incorrect } => (
            correct as f64 * gain + incorrect as f64 * loss,
            correct as f64 * gain * gain + incorrect as f64 * loss * loss,
        ),
        OutcomeCounts::FullSupport {
            true_accept,
            false_accept,
            ..
        } => (
            true_accept as f64 * gain + false_accept as f64 * loss,
            true_accept as f64 * gain * gain + false_accept as f64 * loss * loss,
        ),
    };
    let mean = sum / n;
    if config.trials < 2 {
        return (mean, 0.0);
    }
    let variance = ((sum_sq - sum * sum / n) / (n - 1.0)).max(0.0);
    (mean, (variance / n).sqrt())
}

/// Analytic probability of each outcome under the configured mode, in the
/// serialization order of [`OutcomeCounts`].
fn analytic_outcomes(config: &SimulationConfig) -> Vec<(&'static str, f64)> {
    let alpha = config.params.alpha();
    match config.mode {
        Mode::Engineer => Vec::new(),
        Mode::PartialSupport => vec![("correct", alpha), ("incorrect", 1.0 - alpha)],
        Mode::FullSupport => {
            let beta = config.params.beta().expect("checked by simulate");
            vec![
                ("true_accept", alpha * beta),
                ("false_accept", (1.0 - alpha) * (1.0 - beta)),
                ("false_reject", alpha * (1.0 - beta)),
                ("true_reject", (1.0 - alpha) * beta),
            ]
        }
    }
}

/// Analytic expected payoff of the configured mode.
pub fn analytic_mean(config: &SimulationConfig) -> f64 {
    let p = &config.params;
    match config.mode {
        Mode::Engineer => p.v(),
        Mode::PartialSupport => p.alpha() * p.gain() + (1.0 - p.alpha()) * p.loss(),
        Mode::FullSupport => {
            let beta = p.beta().expect("checked by simulate");
            p.alpha() * beta * p.gain() + (1.0 - p.alpha()) * (1.0 - beta) * p.loss()
        }
    }
}

/// Empirical-versus-analytic comparison for one outcome class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutcomeProbability {
    pub outcome: String,
    pub analytic: f64,
    pub empirical: f64,
}

/// How far a simulation landed from the closed-form expectation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviationReport {
    pub analytic_mean: f64,
    pub empirical_mean: f64,
    /// `empirical_mean - analytic_mean`.
    pub deviation: f64,
    /// Deviation in standard-error units; zero when the standard error is
    /// zero (deterministic processes).
    pub z_score: f64,
    pub outcomes: Vec<OutcomeProbability>,
}

/// Compares a simulation result against the analytic model it sampled.
pub fn compare_to_analytic(result: &SimulationResult) -> DeviationReport {
    let analytic = analytic_mean(&result.config);
    let empirical = result.mean_payoff.value();
    let deviation = empirical - analytic;
    let z_score = if result.std_error > 0.0 {
        deviation / result.std_error
    } else {
        0.0
    };

    let n = result.config.trials as f64;
    let empirical_of = |count: u64| count as f64 / n;
    let counts: Vec<u64> = match result.counts {
        OutcomeCounts::Engineer => Vec::new(),
        OutcomeCounts::PartialSupport { correct, incorrect } => vec![correct, incorrect],
        OutcomeCounts::FullSupport {
            true_accept,
            false_accept,
            false_reject,
            true_reject,
        } => vec![true_accept, false_accept, false_reject, true_reject],
    };
    let outcomes = analytic_outcomes(&result.config)
        .into_iter()
        .zip(counts)
        .map(|((outcome, analytic), count)| OutcomeProbability {
            outcome: outcome.to_string(),
            analytic,
            empirical: empirical_of(count),
        })
        .collect();

    DeviationReport {
        analytic_mean: analytic,
        empirical_mean: empirical,
        deviation,
        z_score,
        outcomes,
    }
}
