//! Expected values, delegation thresholds, optimal mode selection, and
//! region classification.
//!
//! # Model
//!
//! A user needs a result now. Three modes are available:
//!
//! - **Engineer**: wait for the human expert; a guaranteed delayed profit `v`.
//! - **Partial support (PS)**: the AI generates the result and the user acts
//!   on it unconditionally. With probability `alpha` the result is correct
//!   (payoff `gain`), otherwise incorrect (payoff `loss`):
//!
//!   ```text
//!   E_ps(alpha) = alpha * gain + (1 - alpha) * loss
//!   ```
//!
//! - **Full support (FS)**: the AI additionally supports the user in
//!   validating the result; the user acts only on results accepted as
//!   correct. The validation verdict is right with probability `beta`,
//!   independent of correctness, so the outcome tree has four leaves:
//!
//!   ```text
//!   correct   & accepted   p = alpha * beta              payoff gain
//!   incorrect & accepted   p = (1 - alpha) * (1 - beta)  payoff loss
//!   correct   & rejected   p = alpha * (1 - beta)        payoff 0
//!   incorrect & rejected   p = (1 - alpha) * beta        payoff 0
//!
//!   E_fs(alpha, beta) = alpha * beta * gain + (1 - alpha) * (1 - beta) * loss
//!   ```
//!
//! With the default payoffs `gain = +1`, `loss = -1` these reduce to
//! `E_ps = 2*alpha - 1` and `E_fs = alpha + beta - 1`.
//!
//! # Delegation conditions
//!
//! Four threshold conditions decide which mode wins. Serialized output uses
//! the stable ids `eq1`–`eq4` for them:
//!
//! | id    | condition             | threshold form                        |
//! |-------|-----------------------|---------------------------------------|
//! | `eq1` | PS beats the engineer | `alpha > alpha_star_ps(v, gain, loss)`|
//! | `eq2` | FS beats the engineer | `beta > beta_star(alpha, v, ...)`     |
//! | `eq3` | FS is feasible at all | `alpha > alpha_star_fs(v, gain)`      |
//! | `eq4` | FS beats PS           | `beta > beta_double_star(alpha, ...)` |
//!
//! All comparisons are strict; the guaranteed option wins ties (see
//! [`decide_policy`]).
//!
//! # Regions
//!
//! The `(alpha, beta)` plane splits into three regions at fixed payoffs:
//!
//! - **A** (`alpha <= alpha_star_fs`): no AI mode can beat the engineer,
//!   however good the validation — [`beta_star`] is infeasible here.
//! - **B** (`alpha_star_fs < alpha <= alpha_star_ps`): PS alone loses to the
//!   engineer, but sufficiently effective validation makes FS win
//!   (validation *boosts* weak generation).
//! - **C** (`alpha > alpha_star_ps`): PS already beats the engineer; FS needs
//!   `beta` above both remaining thresholds, otherwise validation drags the
//!   outcome down (weak validation *devastates* strong generation).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{check_payoffs, check_probability, DelegationParams, Mode, Utility};

/// Relative half-width of the band in which a value counts as "on" a
/// threshold boundary for reporting purposes. Condition booleans themselves
/// are always strict comparisons of the exact values.
pub const BOUNDARY_BAND: f64 = 1e-9;

/// True when `a` and `b` are within [`BOUNDARY_BAND`] of each other,
/// relative to their magnitude (with an absolute floor at scale one).
pub fn within_band(a: f64, b: f64) -> bool {
    (a - b).abs() <= BOUNDARY_BAND * a.abs().max(b.abs()).max(1.0)
}

/// Expected value of partial support.
pub fn expected_value_ps(params: &DelegationParams) -> Utility {
    let alpha = params.alpha();
    Utility::new(alpha * params.gain() + (1.0 - alpha) * params.loss())
}

/// Expected value of full support. Rejected results contribute zero payoff.
///
/// Errors with [`Error::Missing`] when the parameter set has no `beta`.
pub fn expected_value_fs(params: &DelegationParams) -> Result<Utility> {
    let beta = params.require_beta()?;
    let alpha = params.alpha();
    Ok(Utility::new(
        alpha * beta * params.gain() + (1.0 - alpha) * (1.0 - beta) * params.loss(),
    ))
}

/// Accuracy threshold above which PS beats the engineer:
/// `E_ps(alpha) > v  <=>  alpha > alpha_star_ps(v, gain, loss)`.
///
/// Equals `(v - loss) / (gain - loss)`; `(1 + v) / 2` at default payoffs.
pub fn alpha_star_ps(v: f64, gain: f64, loss: f64) -> Result<f64> {
    check_payoffs(v, gain, loss)?;
    Ok((v - loss) / (gain - loss))
}

/// Accuracy threshold below which FS cannot beat the engineer even with
/// perfect validation: the best case `alpha * gain` must exceed `v`.
///
/// Equals `v / gain`; strictly less than [`alpha_star_ps`] for the same
/// payoffs, so validation widens the range of usable accuracies.
pub fn alpha_star_fs(v: f64, gain: f64) -> Result<f64> {
    if !gain.is_finite() || gain <= 0.0 {
        return Err(Error::invalid("gain", gain, "gain > 0"));
    }
    if !v.is_finite() || v <= 0.0 || v >= gain {
        return Err(Error::invalid("v", v, "0 < v < gain"));
    }
    Ok(v / gain)
}

/// Validation threshold for FS to beat the engineer, as a function of
/// accuracy: `E_fs(alpha, beta) > v  <=>  beta > beta_star(alpha, v, ...)`.
///
/// Equals `(v - (1 - alpha) * loss) / (alpha * gain - (1 - alpha) * loss)`;
/// `(1 - alpha) + v` at default payoffs. When the threshold reaches 1 no
/// admissible `beta` exists — exactly the region-A regime — and the result
/// is [`BetaThreshold::Infeasible`] carrying the raw value.
pub fn beta_star(alpha: f64, v: f64, gain: f64, loss: f64) -> Result<BetaThreshold> {
    check_probability("alpha", alpha)?;
    check_payoffs(v, gain, loss)?;
    let raw = (v - (1.0 - alpha) * loss) / (alpha * gain - (1.0 - alpha) * loss);
    Ok(if raw < 1.0 {
        BetaThreshold::Admissible(raw)
    } else {
        BetaThreshold::Infeasible(raw)
    })
}

/// Validation threshold for FS to beat PS, as a function of accuracy:
/// `E_fs(alpha, beta) > E_ps(alpha)  <=>  beta > beta_double_star(alpha, ...)`.
///
/// Equals `alpha * gain / (alpha * gain - (1 - alpha) * loss)`; reduces to
/// `alpha` itself at default payoffs. Heavier losses lower the threshold:
/// when a wrong result costs more than a right one earns, even mediocre
/// validation is worth having.
pub fn beta_double_star(alpha: f64, gain: f64, loss: f64) -> Result<f64> {
    check_probability("alpha", alpha)?;
    if !loss.is_finite() || loss >= 0.0 {
        return Err(Error::invalid("loss", loss, "loss < 0"));
    }
    if !gain.is_finite() || gain <= 0.0 {
        return Err(Error::invalid("gain", gain, "gain > 0"));
    }
    let up = alpha * gain;
    Ok(up / (up - (1.0 - alpha) * loss))
}

/// A validation-effectiveness threshold, which may lie at or above 1, in
/// which case no admissible `beta` satisfies it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "BetaThresholdRepr", into = "BetaThresholdRepr")]
pub enum BetaThreshold {
    Admissible(f64),
    Infeasible(f64),
}

#[derive(Serialize, Deserialize)]
struct BetaThresholdRepr {
    value: f64,
    feasible: bool,
}

impl From<BetaThresholdRepr> for BetaThreshold {
    fn from(r: BetaThresholdRepr) -> Self {
        if r.feasible {
            BetaThreshold::Admissible(r.value)
        } else {
            BetaThreshold::Infeasible(r.value)
        }
    }
}

impl From<BetaThreshold> for BetaThresholdRepr {
    fn from(t: BetaThreshold) -> Self {
        BetaThresholdRepr {
            value: t.raw(),
            feasible: t.is_admissible(),
        }
    }
}

impl BetaThreshold {
    /// The raw threshold value, admissible or not.
    pub fn raw(self) -> f64 {
        match self {
            BetaThreshold::Admissible(t) | BetaThreshold::Infeasible(t) => t,
        }
    }

    pub fn admissible(self) -> Option<f64> {
        match self {
            BetaThreshold::Admissible(t) => Some(t),
            BetaThreshold::Infeasible(_) => None,
        }
    }

    pub fn is_admissible(self) -> bool {
        matches!(self, BetaThreshold::Admissible(_))
    }
}

/// The delegation conditions. Serialized output uses the stable ids
/// `eq1`–`eq4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Condition {
    /// `eq1`: PS beats the engineer.
    #[serde(rename = "eq1")]
    PsOverEngineer,
    /// `eq2`: FS beats the engineer.
    #[serde(rename = "eq2")]
    FsOverEngineer,
    /// `eq3`: FS is feasible (accuracy clears `alpha_star_fs`).
    #[serde(rename = "eq3")]
    FsFeasible,
    /// `eq4`: FS beats PS.
    #[serde(rename = "eq4")]
    FsOverPs,
}

impl Condition {
    pub fn id(self) -> &'static str {
        match self {
            Condition::PsOverEngineer => "eq1",
            Condition::FsOverEngineer => "eq2",
            Condition::FsFeasible => "eq3",
            Condition::FsOverPs => "eq4",
        }
    }
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

/// Boolean evaluation of the four delegation conditions at one parameter
/// point. The two conditions involving `beta` are `None` when the parameter
/// set has no `beta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionSet {
    #[serde(rename = "eq1")]
    pub ps_over_engineer: bool,
    #[serde(rename = "eq2")]
    pub fs_over_engineer: Option<bool>,
    #[serde(rename = "eq3")]
    pub fs_feasible: bool,
    #[serde(rename = "eq4")]
    pub fs_over_ps: Option<bool>,
}

/// Per-mode advantage over the best alternative: `E_mode - max(E_other)`.
/// Positive for the winner only.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Margins {
    pub engineer: f64,
    pub ps: f64,
    pub fs: Option<f64>,
}

/// Outcome of [`decide_policy`]: the chosen mode plus everything needed to
/// audit the choice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolicyDecision {
    pub chosen: Mode,
    pub expected_engineer: Utility,
    pub expected_ps: Utility,
    /// Absent when the parameter set has no `beta`.
    pub expected_fs: Option<Utility>,
    pub conditions: ConditionSet,
    pub margins: Margins,
}

/// Picks the mode with the highest expected value.
///
/// All comparisons are strict, so at exact equality the earlier mode in the
/// order Engineer, PS, FS wins: the engineer's `v` is risk-free and PS skips
/// the validation effort, so ties fall to the safer incumbent. Without a
/// `beta` only Engineer and PS compete.
pub fn decide_policy(params: &DelegationParams) -> PolicyDecision {
    let e_engineer = Utility::new(params.v());
    let e_ps = expected_value_ps(params);
    let e_fs = expected_value_fs(params).ok();

    let mut chosen = Mode::Engineer;
    let mut best = e_engineer.value();
    if e_ps.value() > best {
        chosen = Mode::PartialSupport;
        best = e_ps.value();
    }
    if let Some(fs) = e_fs {
        if fs.value() > best {
            chosen = Mode::FullSupport;
        }
    }

    let margins = match e_fs {
        Some(fs) => Margins {
            engineer: e_engineer.value() - e_ps.value().max(fs.value()),
            ps: e_ps.value() - e_engineer.value().max(fs.value()),
            fs: Some(fs.value() - e_engineer.value().max(e_ps.value())),
        },
        None => Margins {
            engineer: e_engineer.value() - e_ps.value(),
            ps: e_ps.value() - e_engineer.value(),
            fs: None,
        },
    };

    PolicyDecision {
        chosen,
        expected_engineer: e_engineer,
        expected_ps: e_ps,
        expected_fs: e_fs,
        conditions: evaluate_conditions(params),
        margins,
    }
}

/// Evaluates the four conditions via their threshold forms (strict `>`).
pub fn evaluate_conditions(params: &DelegationParams) -> ConditionSet {
    let (alpha, v, gain, loss) = (params.alpha(), params.v(), params.gain(), params.loss());
    // Thresholds exist for every valid parameter set.
    let a_ps = alpha_star_ps(v, gain, loss).expect("validated params");
    let a_fs = alpha_star_fs(v, gain).expect("validated params");
    let b_star = beta_star(alpha, v, gain, loss).expect("validated params");
    let b_dstar = beta_double_star(alpha, gain, loss).expect("validated params");

    ConditionSet {
        ps_over_engineer: alpha > a_ps,
        fs_over_engineer: params.beta().map(|beta| beta > b_star.raw()),
        fs_feasible: alpha > a_fs,
        fs_over_ps: params.beta().map(|beta| beta > b_dstar),
    }
}

/// Conditions whose defining threshold lies within [`BOUNDARY_BAND`] of the
/// parameter point. Callers that care about knife-edge inputs can surface
/// these; the strict booleans in [`ConditionSet`] are unaffected.
pub fn boundary_conditions(params: &DelegationParams) -> Vec<Condition> {
    let (alpha, v, gain, loss) = (params.alpha(), params.v(), params.gain(), params.loss());
    let a_ps = alpha_star_ps(v, gain, loss).expect("validated params");
    let a_fs = alpha_star_fs(v, gain).expect("validated params");
    let b_star = beta_star(alpha, v, gain, loss).expect("validated params");
    let b_dstar = beta_double_star(alpha, gain, loss).expect("validated params");

    let mut out = Vec::new();
    if within_band(alpha, a_ps) {
        out.push(Condition::PsOverEngineer);
    }
    if let Some(beta) = params.beta() {
        if within_band(beta, b_star.raw()) {
            out.push(Condition::FsOverEngineer);
        }
    }
    if within_band(alpha, a_fs) {
        out.push(Condition::FsFeasible);
    }
    if let Some(beta) = params.beta() {
        if within_band(beta, b_dstar) {
            out.push(Condition::FsOverPs);
        }
    }
    out
}

/// Accuracy regime at fixed `(v, gain, loss)`; see the module docs.
/// Ordered by increasing accuracy: A < B < C.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Region {
    A,
    B,
    C,
}

impl std::fmt::Display for Region {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Region::A => f.write_str("A"),
            Region::B => f.write_str("B"),
            Region::C => f.write_str("C"),
        }
    }
}

/// Whether FS strictly beats both alternatives at this point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FsStatus {
    FsWins,
    FsLoses,
    /// Region A: FS cannot win at any validation effectiveness.
    NotApplicable,
}

impl std::fmt::Display for FsStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            FsStatus::FsWins => "fs_wins",
            FsStatus::FsLoses => "fs_loses",
            FsStatus::NotApplicable => "not_applicable",
        };
        f.write_str(s)
    }
}

/// Classification of one parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionLabel {
    pub region: Region,
    pub fs_status: FsStatus,
}

/// Classifies a parameter point into its region and FS status.
///
/// Region boundaries are closed on the left region (`alpha` exactly at a
/// threshold belongs to the lower region), mirroring the strict inequalities
/// of the delegation conditions. `beta` is required: the FS status is part
/// of the label.
pub fn classify_region(params: &DelegationParams) -> Result<RegionLabel> {
    let beta = params.require_beta()?;
    let (alpha, v, gain, loss) = (params.alpha(), params.v(), params.gain(), params.loss());
    let a_ps = alpha_star_ps(v, gain, loss)?;
    let a_fs = alpha_star_fs(v, gain)?;

    let region = if alpha <= a_fs {
        Region::A
    } else if alpha <= a_ps {
        Region::B
    } else {
        Region::C
    };

    let fs_status = if region == Region::A {
        FsStatus::NotApplicable
    } else {
        let e_fs = alpha * beta * gain + (1.0 - alpha) * (1.0 - beta) * loss;
        let e_ps = alpha * gain + (1.0 - alpha) * loss;
        if e_fs > v && e_fs > e_ps {
            FsStatus::FsWins
        } else {
            FsStatus::FsLoses
        }
    };

    Ok(RegionLabel { region, fs_status })
}
