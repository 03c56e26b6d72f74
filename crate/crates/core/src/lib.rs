//! `deleg-core`: expected-utility analysis of delegating a task to an AI
//! assistant, an AI assistant plus user validation, or a human expert.
//!
//! The model compares three ways of getting a needed result:
//!
//! - **Engineer** — wait for the expert; a guaranteed delayed profit `v`.
//! - **Partial support (PS)** — act on AI-generated output unconditionally;
//!   right with probability `alpha`.
//! - **Full support (FS)** — validate the AI output first and act only on
//!   acceptance; the verdict is right with probability `beta`.
//!
//! Everything else in the crate is built on the expected values of those
//! three processes:
//!
//! - [`policy`] — closed-form expected values, the four delegation
//!   thresholds, optimal-mode selection, and region classification.
//! - [`sim`] — seeded, deterministic Monte Carlo simulation of the same
//!   processes, for verifying the closed forms and exposing outcome-level
//!   statistics.
//! - [`sweep`] — region-map grids and threshold curves for sensitivity
//!   analysis.
//! - [`estimate`] — estimating `alpha` and `beta` from trial logs with
//!   Wilson score intervals, and deciding under that uncertainty.
//!
//! ```
//! use deleg_core::{decide_policy, DelegationParams, Mode};
//!
//! // 60% generation accuracy is not enough on its own (E_ps = 0.2 < 0.5),
//! // but strong validation lifts full support past the engineer.
//! let params = DelegationParams::fs(0.6, 0.95, 0.5)?;
//! let decision = decide_policy(&params);
//! assert_eq!(decision.chosen, Mode::FullSupport);
//! assert!((decision.expected_fs.unwrap().value() - 0.55).abs() < 1e-12);
//! # Ok::<(), deleg_core::Error>(())
//! ```
//!
//! All operations are pure functions of their inputs; every type is
//! immutable once constructed and freely shareable across threads. The
//! narrative guide in `book/` walks through the model chapter by chapter;
//! its code snippets compile and run as doctests of this crate.

pub mod error;
pub mod estimate;
pub mod params;
pub mod policy;
pub mod sim;
pub mod sweep;

pub use error::{Error, Result};
pub use estimate::{
    decide_from_estimates, estimate_alpha, estimate_beta, load_trials, probit, read_trials_csv,
    read_trials_jsonl, EstimateDecision, EstimateInput, Interval, RateEstimate, Stance,
    TrialRecord, Verdict,
};
pub use params::{DelegationParams, Mode, ParamsBuilder, Utility, DEFAULT_GAIN, DEFAULT_LOSS};
pub use policy::{
    alpha_star_fs, alpha_star_ps, beta_double_star, beta_star, boundary_conditions,
    classify_region, decide_policy, evaluate_conditions, expected_value_fs, expected_value_ps,
    within_band, BetaThreshold, Condition, ConditionSet, FsStatus, Margins, PolicyDecision, Region,
    RegionLabel, BOUNDARY_BAND,
};
pub use sim::{
    analytic_mean, compare_to_analytic, simulate, DeviationReport, OutcomeCounts,
    OutcomeProbability, SimulationConfig, SimulationResult, CHUNK_TRIALS,
};
pub use sweep::{
    boundary_curves, region_grid, BoundaryRow, BoundaryTable, GridCell, GridSpec, RangeSpec,
};

// The guide's code snippets double as doctests so the book can never drift
// from the library.
#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $path:literal) => {
            #[doc = include_str!($path)]
            mod $name {}
        };
    }

    chapter!(introduction, "../../../book/src/introduction.md");
    chapter!(model, "../../../book/src/model.md");
    chapter!(thresholds, "../../../book/src/thresholds.md");
    chapter!(regions, "../../../book/src/regions.md");
    chapter!(simulation, "../../../book/src/simulation.md");
    chapter!(estimation, "../../../book/src/estimation.md");
    chapter!(cli, "../../../book/src/cli.md");
}
