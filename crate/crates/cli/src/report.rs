//! Output records for every subcommand. Each serializes to the JSON shape
//! published in `schemas/` and knows how to flatten itself to CSV and a
//! plain-text table. All monetary inputs are echoed so downstream tooling
//! never needs to know the defaults.

use serde::{Deserialize, Serialize};

use deleg_core::{
    alpha_star_fs, alpha_star_ps, beta_double_star, beta_star, boundary_conditions,
    classify_region, decide_policy, evaluate_conditions, expected_value_fs, expected_value_ps,
    BetaThreshold, BoundaryTable, Condition, ConditionSet, DelegationParams, DeviationReport,
    EstimateDecision, EstimateInput, FsStatus, GridCell, OutcomeCounts, PolicyDecision, RangeSpec,
    Region, Result, SimulationConfig, SimulationResult, Stance,
};

/// Expected value of each available mode.
#[derive(Debug, Serialize, Deserialize)]
pub struct Expected {
    pub engineer: f64,
    pub ps: f64,
    pub fs: Option<f64>,
}

impl Expected {
    fn of(params: &DelegationParams) -> Self {
        Expected {
            engineer: params.v(),
            ps: expected_value_ps(params).value(),
            fs: expected_value_fs(params).ok().map(|u| u.value()),
        }
    }
}

/// The four thresholds at the evaluated point. The beta thresholds are
/// functions of `alpha` alone, so they are always present.
#[derive(Debug, Serialize, Deserialize)]
pub struct Thresholds {
    pub alpha_star_ps: f64,
    pub alpha_star_fs: f64,
    pub beta_star: BetaThreshold,
    pub beta_double_star: f64,
}

impl Thresholds {
    fn of(params: &DelegationParams) -> Result<Self> {
        let (alpha, v, gain, loss) = (params.alpha(), params.v(), params.gain(), params.loss());
        Ok(Thresholds {
            alpha_star_ps: alpha_star_ps(v, gain, loss)?,
            alpha_star_fs: alpha_star_fs(v, gain)?,
            beta_star: beta_star(alpha, v, gain, loss)?,
            beta_double_star: beta_double_star(alpha, gain, loss)?,
        })
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EvaluateReport {
    pub params: DelegationParams,
    pub expected: Expected,
    pub thresholds: Thresholds,
    pub conditions: ConditionSet,
    /// Conditions whose threshold lies within the reporting band of the
    /// evaluated point; their booleans are knife-edge reads.
    pub on_boundary: Vec<Condition>,
}

impl EvaluateReport {
    pub fn build(params: DelegationParams) -> Result<Self> {
        Ok(EvaluateReport {
            expected: Expected::of(&params),
            thresholds: Thresholds::of(&params)?,
            conditions: evaluate_conditions(&params),
            on_boundary: boundary_conditions(&params),
            params,
        })
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct PolicyReport {
    pub params: DelegationParams,
    pub decision: PolicyDecision,
    pub on_boundary: Vec<Condition>,
}

impl PolicyReport {
    pub fn build(params: DelegationParams) -> Self {
        PolicyReport {
            decision: decide_policy(&params),
            on_boundary: boundary_conditions(&params),
            params,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ClassifyReport {
    pub params: DelegationParams,
    pub region: Region,
    pub fs_status: FsStatus,
    pub thresholds: Thresholds,
    pub on_boundary: Vec<Condition>,
}

impl ClassifyReport {
    pub fn build(params: DelegationParams) -> Result<Self> {
        let label = classify_region(&params)?;
        Ok(ClassifyReport {
            region: label.region,
            fs_status: label.fs_status,
            thresholds: Thresholds::of(&params)?,
            on_boundary: boundary_conditions(&params),
            params,
        })
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SweepGridReport {
    pub v: f64,
    pub gain: f64,
    pub loss: f64,
    pub alpha: RangeSpec,
    pub beta: RangeSpec,
    pub cells: Vec<GridCell>,
}

/// The curves table is emitted as-is.
pub type CurvesReport = BoundaryTable;

#[derive(Debug, Serialize, Deserialize)]
pub struct SimulateReport {
    pub config: SimulationConfig,
    pub counts: OutcomeCounts,
    pub mean_payoff: f64,
    pub std_error: f64,
    pub comparison: DeviationReport,
}

impl SimulateReport {
    pub fn build(result: SimulationResult, comparison: DeviationReport) -> Self {
        SimulateReport {
            config: result.config,
            counts: result.counts,
            mean_payoff: result.mean_payoff.value(),
            std_error: result.std_error,
            comparison,
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct EstimateReport {
    /// Records ingested from the log.
    pub records: u64,
    /// Records carrying a validation verdict.
    pub validated: u64,
    pub stance: Stance,
    pub alpha: EstimateInput,
    pub beta: Option<EstimateInput>,
    pub decision: PolicyDecision,
}

impl EstimateReport {
    pub fn build(records: u64, validated: u64, result: EstimateDecision) -> Self {
        EstimateReport {
            records,
            validated,
            stance: result.stance,
            alpha: result.alpha,
            beta: result.beta,
            decision: result.decision,
        }
    }
}
