//! Command execution: config merging, validation, delegation to the core
//! library, and output emission.

use std::path::PathBuf;

use deleg_core::{
    boundary_curves, compare_to_analytic, decide_from_estimates, estimate_alpha, estimate_beta,
    load_trials, region_grid, simulate, DelegationParams, GridSpec, Mode, RangeSpec,
    SimulationConfig, Stance,
};

use crate::cli::{
    Cli, Command, CommonOpts, EstimateArgs, ModelOpts, OutputFormat, PointArgs, SimulateArgs,
    SweepArgs,
};
use crate::config::{self, EstimateConfig, PointConfig, SimulateConfig, SweepConfig};
use crate::error::CliError;
use crate::render::{render, write_out, Render};
use crate::report::{
    ClassifyReport, EstimateReport, EvaluateReport, PolicyReport, SimulateReport, SweepGridReport,
};

/// Environment variable overriding the built-in default output format.
/// Precedence stays flag > config file > environment > `json`.
pub const FORMAT_ENV_VAR: &str = "DELEG_FORMAT";

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Evaluate(args) => evaluate(args),
        Command::Policy(args) => policy(args),
        Command::Classify(args) => classify(args),
        Command::Sweep(args) => sweep(args),
        Command::Simulate(args) => simulate_cmd(args),
        Command::Estimate(args) => estimate(args),
    }
}

fn require<T>(value: Option<T>, flag: &'static str) -> Result<T, CliError> {
    value.ok_or(CliError::MissingFlag(flag))
}

fn env_format() -> Result<Option<OutputFormat>, CliError> {
    match std::env::var(FORMAT_ENV_VAR) {
        Err(_) => Ok(None),
        Ok(raw) => match raw.to_ascii_lowercase().as_str() {
            "json" => Ok(Some(OutputFormat::Json)),
            "csv" => Ok(Some(OutputFormat::Csv)),
            "table" => Ok(Some(OutputFormat::Table)),
            _ => Err(CliError::BadFlag {
                flag: FORMAT_ENV_VAR,
                message: format!("`{raw}` is not one of json, csv, table"),
            }),
        },
    }
}

/// Resolves output format and target after flag/config merging.
fn resolve_output(
    common: &CommonOpts,
    cfg_format: Option<OutputFormat>,
    cfg_output: Option<PathBuf>,
) -> Result<(OutputFormat, Option<PathBuf>), CliError> {
    let format = match common.format.or(cfg_format) {
        Some(format) => format,
        None => env_format()?.unwrap_or(OutputFormat::Json),
    };
    Ok((format, common.output.clone().or(cfg_output)))
}

fn emit<R: Render>(
    report: &R,
    format: OutputFormat,
    target: Option<PathBuf>,
) -> Result<(), CliError> {
    write_out(&render(report, format), target.as_deref())
}

/// Builds validated params from merged flag/config values. `alpha` and `v`
/// are mandatory; `beta` is required only when `need_beta` is set.
fn build_params(
    model: &ModelOpts,
    cfg: &PointConfig,
    need_beta: bool,
) -> Result<DelegationParams, CliError> {
    let alpha = require(model.alpha.or(cfg.alpha), "--alpha")?;
    let v = require(model.v.or(cfg.v), "--v")?;
    let beta = model.beta.or(cfg.beta);
    if need_beta && beta.is_none() {
        return Err(CliError::MissingFlag("--beta"));
    }

    let mut builder = DelegationParams::builder().alpha(alpha).v(v);
    if let Some(beta) = beta {
        builder = builder.beta(beta);
    }
    if let Some(gain) = model.gain.or(cfg.gain) {
        builder = builder.gain(gain);
    }
    if let Some(loss) = model.loss.or(cfg.loss) {
        builder = builder.loss(loss);
    }
    Ok(builder.build()?)
}

fn evaluate(args: PointArgs) -> Result<(), CliError> {
    let cfg: PointConfig = config::load(args.common.config.as_deref())?;
    let (format, target) = resolve_output(&args.common, cfg.format, cfg.output.clone())?;
    let params = build_params(&args.model, &cfg, false)?;
    emit(&EvaluateReport::build(params)?, format, target)
}

fn policy(args: PointArgs) -> Result<(), CliError> {
    let cfg: PointConfig = config::load(args.common.config.as_deref())?;
    let (format, target) = resolve_output(&args.common, cfg.format, cfg.output.clone())?;
    let params = build_params(&args.model, &cfg, false)?;
    emit(&PolicyReport::build(params), format, target)
}

fn classify(args: PointArgs) -> Result<(), CliError> {
    let cfg: PointConfig = config::load(args.common.config.as_deref())?;
    let (format, target) = resolve_output(&args.common, cfg.format, cfg.output.clone())?;
    let params = build_params(&args.model, &cfg, true)?;
    emit(&ClassifyReport::build(params)?, format, target)
}

/// Parses a `start:stop:steps` range flag.
fn parse_range(raw: &str, flag: &'static str) -> Result<RangeSpec, CliError> {
    let parts: Vec<&str> = raw.split(':').collect();
    let bad = |message: String| CliError::BadFlag { flag, message };
    if parts.len() != 3 {
        return Err(bad(format!("`{raw}` is not of the form start:stop:steps")));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| bad(format!("`{}` is not a number", parts[0])))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|_| bad(format!("`{}` is not a number", parts[1])))?;
    let steps: usize = parts[2]
        .parse()
        .map_err(|_| bad(format!("`{}` is not a step count", parts[2])))?;
    Ok(RangeSpec::new(start, stop, steps)?)
}

fn sweep(args: SweepArgs) -> Result<(), CliError> {
    let cfg: SweepConfig = config::load(args.common.config.as_deref())?;
    let (format, target) = resolve_output(&args.common, cfg.format, cfg.output.clone())?;

    let v = require(args.v.or(cfg.v), "--v")?;
    let gain = args.gain.or(cfg.gain).unwrap_or(deleg_core::DEFAULT_GAIN);
    let loss = args.loss.or(cfg.loss).unwrap_or(deleg_core::DEFAULT_LOSS);

    let curves = args.curves || cfg.curves.unwrap_or(false);
    if curves {
        let samples = require(args.samples.or(cfg.samples), "--samples")?;
        let table = boundary_curves(v, gain, loss, samples)?;
        return emit(&table, format, target);
    }

    let alpha = parse_range(&require(args.alpha.or(cfg.alpha), "--alpha")?, "--alpha")?;
    let beta = parse_range(&require(args.beta.or(cfg.beta), "--beta")?, "--beta")?;
    let spec = GridSpec {
        v,
        gain,
        loss,
        alpha,
        beta,
    };
    let report = SweepGridReport {
        v,
        gain,
        loss,
        alpha,
        beta,
        cells: region_grid(&spec)?,
    };
    emit(&report, format, target)
}

fn simulate_cmd(args: SimulateArgs) -> Result<(), CliError> {
    let cfg: SimulateConfig = config::load(args.common.config.as_deref())?;
    let (format, target) = resolve_output(&args.common, cfg.format, cfg.output.clone())?;

    let mode: Mode = require(args.mode.or(cfg.mode), "--mode")?.into();
    let point_cfg = PointConfig {
        alpha: cfg.alpha,
        beta: cfg.beta,
        v: cfg.v,
        gain: cfg.gain,
        loss: cfg.loss,
        format: None,
        output: None,
    };
    let params = build_params(&args.model, &point_cfg, mode == Mode::FullSupport)?;
    let config = SimulationConfig {
        params,
        mode,
        trials: require(args.trials.or(cfg.trials), "--trials")?,
        seed: require(args.seed.or(cfg.seed), "--seed")?,
    };

    let result = match args.threads.or(cfg.threads) {
        None => simulate(&config)?,
        Some(0) => {
            return Err(CliError::BadFlag {
                flag: "--threads",
                message: "thread count must be at least 1".into(),
            })
        }
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::BadFlag {
                flag: "--threads",
                message: e.to_string(),
            })?
            .install(|| simulate(&config))?,
    };
    let comparison = compare_to_analytic(&result);
    emit(&SimulateReport::build(result, comparison), format, target)
}

fn estimate(args: EstimateArgs) -> Result<(), CliError> {
    let cfg: EstimateConfig = config::load(args.common.config.as_deref())?;
    let (format, target) = resolve_output(&args.common, cfg.format, cfg.output.clone())?;

    let log_path = require(args.log.or(cfg.log), "--log")?;
    let confidence = args.confidence.or(cfg.confidence).unwrap_or(0.95);
    let stance: Stance = args
        .stance
        .or(cfg.stance)
        .map(Into::into)
        .unwrap_or(Stance::PointEstimate);
    let v = require(args.v.or(cfg.v), "--v")?;
    let gain = args.gain.or(cfg.gain).unwrap_or(deleg_core::DEFAULT_GAIN);
    let loss = args.loss.or(cfg.loss).unwrap_or(deleg_core::DEFAULT_LOSS);

    let records = load_trials(&log_path).map_err(|e| match e {
        deleg_core::Error::Io(io) => CliError::Io(std::io::Error::new(
            io.kind(),
            format!("{}: {io}", log_path.display()),
        )),
        other => CliError::Core(other),
    })?;
    let validated = records
        .iter()
        .filter(|r| r.validation_verdict.is_some())
        .count() as u64;

    let alpha_est = estimate_alpha(&records, confidence)?;
    // A log with no verdicts at all is a valid PS-only log; beta is simply
    // unavailable and full support drops out of the comparison.
    let beta_est = if validated > 0 {
        Some(estimate_beta(&records, confidence)?)
    } else {
        None
    };

    let result = decide_from_estimates(&alpha_est, beta_est.as_ref(), v, gain, loss, stance)?;
    let report = EstimateReport::build(records.len() as u64, validated, result);
    emit(&report, format, target)
}
