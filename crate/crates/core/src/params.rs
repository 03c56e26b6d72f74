//! Model inputs and the shared domain vocabulary.
//!
//! [`DelegationParams`] bundles the quantities every analysis in this crate
//! consumes: the generation accuracy `alpha`, the optional validation
//! effectiveness `beta`, the delayed profit `v` obtainable through the human
//! engineer, and the `gain`/`loss` payoffs attached to acting on a correct or
//! incorrect result. Values are validated once, at construction, so every
//! downstream function can assume the invariants hold:
//!
//! - `0 < alpha < 1` and, when present, `0 < beta < 1`
//! - `loss < 0 < v < gain`
//!
//! Endpoint probabilities (exactly 0 or 1) are rejected rather than clamped;
//! the thresholds in [`crate::policy`] are only well defined on the open
//! interval.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default payoff for acting on a correct result.
pub const DEFAULT_GAIN: f64 = 1.0;
/// Default payoff for acting on an incorrect result.
pub const DEFAULT_LOSS: f64 = -1.0;

/// A monetary utility. All payoffs and expected values in this crate are
/// expressed in the same (arbitrary) monetary unit.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Utility(f64);

impl Utility {
    pub(crate) fn new(value: f64) -> Self {
        debug_assert!(value.is_finite());
        Utility(value)
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<Utility> for f64 {
    fn from(u: Utility) -> f64 {
        u.0
    }
}

impl std::fmt::Display for Utility {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// How the task is carried out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// Wait for the human engineer; yields the delayed profit `v` with
    /// certainty.
    #[serde(rename = "engineer")]
    Engineer,
    /// The AI generates the result and the user acts on it unconditionally.
    #[serde(rename = "ps")]
    PartialSupport,
    /// The AI generates the result, the user validates it, and acts only on
    /// results accepted as correct.
    #[serde(rename = "fs")]
    FullSupport,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Mode::Engineer => "engineer",
            Mode::PartialSupport => "ps",
            Mode::FullSupport => "fs",
        };
        f.write_str(s)
    }
}

/// Validated inputs of the delegation model.
///
/// `beta` is optional: analyses restricted to partial support never consult
/// it, and full-support operations reject parameter sets without it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct DelegationParams {
    alpha: f64,
    beta: Option<f64>,
    v: f64,
    gain: f64,
    loss: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    alpha: f64,
    #[serde(default)]
    beta: Option<f64>,
    v: f64,
    gain: f64,
    loss: f64,
}

impl TryFrom<RawParams> for DelegationParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        let mut b = DelegationParams::builder()
            .alpha(raw.alpha)
            .v(raw.v)
            .gain(raw.gain)
            .loss(raw.loss);
        if let Some(beta) = raw.beta {
            b = b.beta(beta);
        }
        b.build()
    }
}

impl DelegationParams {
    /// Partial-support parameters with the default `(+1, -1)` payoffs.
    pub fn ps(alpha: f64, v: f64) -> Result<Self> {
        Self::builder().alpha(alpha).v(v).build()
    }

    /// Full-support parameters with the default `(+1, -1)` payoffs.
    pub fn fs(alpha: f64, beta: f64, v: f64) -> Result<Self> {
        Self::builder().alpha(alpha).beta(beta).v(v).build()
    }

    pub fn builder() -> ParamsBuilder {
        ParamsBuilder::default()
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> Option<f64> {
        self.beta
    }

    /// `beta`, or [`Error::Missing`] for parameter sets without one.
    pub fn require_beta(&self) -> Result<f64> {
        self.beta.ok_or(Error::Missing("beta"))
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn gain(&self) -> f64 {
        self.gain
    }

    pub fn loss(&self) -> f64 {
        self.loss
    }
}

/// Builder for [`DelegationParams`]; `build` performs all validation.
#[derive(Debug, Clone, Default)]
pub struct ParamsBuilder {
    alpha: Option<f64>,
    beta: Option<f64>,
    v: Option<f64>,
    gain: Option<f64>,
    loss: Option<f64>,
}

impl ParamsBuilder {
    pub fn alpha(mut self, alpha: f64) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn beta(mut self, beta: f64) -> Self {
        self.beta = Some(beta);
        self
    }

    pub fn v(mut self, v: f64) -> Self {
        self.v = Some(v);
        self
    }

    pub fn gain(mut self, gain: f64) -> Self {
        self.gain = Some(gain);
        self
    }

    pub fn loss(mut self, loss: f64) -> Self {
        self.loss = Some(loss);
        self
    }

    pub fn build(self) -> Result<DelegationParams> {
        let alpha = self.alpha.ok_or(Error::Missing("alpha"))?;
        let v = self.v.ok_or(Error::Missing("v"))?;
        let gain = self.gain.unwrap_or(DEFAULT_GAIN);
        let loss = self.loss.unwrap_or(DEFAULT_LOSS);

        check_probability("alpha", alpha)?;
        if let Some(beta) = self.beta {
            check_probability("beta", beta)?;
        }
        check_payoffs(v, gain, loss)?;

        Ok(DelegationParams {
            alpha,
            beta: self.beta,
            v,
            gain,
            loss,
        })
    }
}

pub(crate) fn check_probability(name: &'static str, value: f64) -> Result<()> {
    if !value.is_finite() || value <= 0.0 || value >= 1.0 {
        return Err(Error::invalid(name, value, "0 < value < 1"));
    }
    Ok(())
}

/// Validates the payoff ordering `loss < 0 < v < gain`.
pub(crate) fn check_payoffs(v: f64, gain: f64, loss: f64) -> Result<()> {
    if !loss.is_finite() || loss >= 0.0 {
        return Err(Error::invalid("loss", loss, "loss < 0"));
    }
    if !gain.is_finite() || gain <= 0.0 {
        return Err(Error::invalid("gain", gain, "gain > 0"));
    }
    if !v.is_finite() || v <= 0.0 || v >= gain {
        return Err(Error::invalid("v", v, "0 < v < gain"));
    }
    Ok(())
}
