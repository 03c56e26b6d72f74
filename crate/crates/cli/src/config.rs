//! Config-file support: a JSON object per subcommand whose keys mirror the
//! flag names. The file parses (strictly: unknown keys fail) before any
//! merging; explicit flags then win field by field.

use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Deserialize;

use crate::cli::{ModeArg, OutputFormat, StanceArg};
use crate::error::CliError;

#[derive(Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
pub struct PointConfig {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub v: Option<f64>,
    pub gain: Option<f64>,
    pub loss: Option<f64>,
    pub format: Option<OutputFormat>,
    pub output: Option<PathBuf>,
}

#[derive(Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub curves: Option<bool>,
    pub v: Option<f64>,
    pub gain: Option<f64>,
    pub loss: Option<f64>,
    pub alpha: Option<String>,
    pub beta: Option<String>,
    pub samples: Option<usize>,
    pub format: Option<OutputFormat>,
    pub output: Option<PathBuf>,
}

#[derive(Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
pub struct SimulateConfig {
    pub mode: Option<ModeArg>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub v: Option<f64>,
    pub gain: Option<f64>,
    pub loss: Option<f64>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub format: Option<OutputFormat>,
    pub output: Option<PathBuf>,
}

#[derive(Deserialize, Default, Debug)]
#[serde(deny_unknown_fields)]
pub struct EstimateConfig {
    pub log: Option<PathBuf>,
    pub confidence: Option<f64>,
    pub stance: Option<StanceArg>,
    pub v: Option<f64>,
    pub gain: Option<f64>,
    pub loss: Option<f64>,
    pub format: Option<OutputFormat>,
    pub output: Option<PathBuf>,
}

/// Loads a subcommand's config file, or the all-`None` default without one.
pub fn load<T: DeserializeOwned + Default>(path: Option<&Path>) -> Result<T, CliError> {
    let Some(path) = path else {
        return Ok(T::default());
    };
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| CliError::Config {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}
