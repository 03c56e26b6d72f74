//! Rendering reports as JSON, CSV, or an aligned text table.
//!
//! All numeric formatting goes through [`num`] (Rust's shortest round-trip
//! `Display`), so output bytes are stable across runs and platforms.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use deleg_core::{BetaThreshold, OutcomeCounts};

use crate::cli::OutputFormat;
use crate::error::CliError;
use crate::report::{
    ClassifyReport, CurvesReport, EstimateReport, EvaluateReport, PolicyReport, SimulateReport,
    SweepGridReport,
};

pub trait Render: Serialize {
    fn to_csv(&self) -> String;
    fn to_table(&self) -> String;
}

pub fn render<R: Render>(report: &R, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut json = serde_json::to_string_pretty(report).expect("reports serialize");
            json.push('\n');
            json
        }
        OutputFormat::Csv => report.to_csv(),
        OutputFormat::Table => report.to_table(),
    }
}

pub fn write_out(text: &str, target: Option<&Path>) -> Result<(), CliError> {
    match target {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
        Some(path) => fs::write(path, text)?,
    }
    Ok(())
}

pub fn num(x: f64) -> String {
    format!("{x}")
}

fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn opt_bool(x: Option<bool>) -> String {
    x.map(|b| b.to_string()).unwrap_or_default()
}

fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn kv_table(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in pairs {
        out.push_str(&format!("{k:<width$}  {v}\n"));
    }
    out
}

fn columns(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let joined: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out.push_str(joined.join("  ").trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

fn beta_threshold_cells(t: BetaThreshold) -> (String, String) {
    (num(t.raw()), t.is_admissible().to_string())
}

fn joined_conditions(list: &[deleg_core::Condition]) -> String {
    list.iter().map(|c| c.id()).collect::<Vec<_>>().join(";")
}

// ── evaluate ─────────────────────────────────────────────────────────────

const EVALUATE_COLUMNS: &[&str] = &[
    "alpha",
    "beta",
    "v",
    "gain",
    "loss",
    "e_engineer",
    "e_ps",
    "e_fs",
    "alpha_star_ps",
    "alpha_star_fs",
    "beta_star",
    "beta_star_feasible",
    "beta_double_star",
    "eq1",
    "eq2",
    "eq3",
    "eq4",
    "on_boundary",
];

impl Render for EvaluateReport {
    fn to_csv(&self) -> String {
        let (b_star, b_star_ok) = beta_threshold_cells(self.thresholds.beta_star);
        let row = vec![
            num(self.params.alpha()),
            opt_num(self.params.beta()),
            num(self.params.v()),
            num(self.params.gain()),
            num(self.params.loss()),
            num(self.expected.engineer),
            num(self.expected.ps),
            opt_num(self.expected.fs),
            num(self.thresholds.alpha_star_ps),
            num(self.thresholds.alpha_star_fs),
            b_star,
            b_star_ok,
            num(self.thresholds.beta_double_star),
            self.conditions.ps_over_engineer.to_string(),
            opt_bool(self.conditions.fs_over_engineer),
            self.conditions.fs_feasible.to_string(),
            opt_bool(self.conditions.fs_over_ps),
            joined_conditions(&self.on_boundary),
        ];
        csv(EVALUATE_COLUMNS, &[row])
    }

    fn to_table(&self) -> String {
        let mut pairs = vec![
            ("alpha", num(self.params.alpha())),
            ("beta", opt_num(self.params.beta())),
            ("v", num(self.params.v())),
            ("gain", num(self.params.gain())),
            ("loss", num(self.params.loss())),
            ("E[engineer]", num(self.expected.engineer)),
            ("E[ps]", num(self.expected.ps)),
            ("E[fs]", opt_num(self.expected.fs)),
            ("alpha_star_ps", num(self.thresholds.alpha_star_ps)),
            ("alpha_star_fs", num(self.thresholds.alpha_star_fs)),
            ("beta_star", num(self.thresholds.beta_star.raw())),
            (
                "beta_star feasible",
                self.thresholds.beta_star.is_admissible().to_string(),
            ),
            ("beta_double_star", num(self.thresholds.beta_double_star)),
            (
                "eq1 (ps > engineer)",
                self.conditions.ps_over_engineer.to_string(),
            ),
            (
                "eq2 (fs > engineer)",
                opt_bool(self.conditions.fs_over_engineer),
            ),
            ("eq3 (fs feasible)", self.conditions.fs_feasible.to_string()),
            ("eq4 (fs > ps)", opt_bool(self.conditions.fs_over_ps)),
        ];
        if !self.on_boundary.is_empty() {
            pairs.push(("on boundary", joined_conditions(&self.on_boundary)));
        }
        kv_table(&pairs)
    }
}

// ── policy ───────────────────────────────────────────────────────────────

const POLICY_COLUMNS: &[&str] = &[
    "alpha",
    "beta",
    "v",
    "gain",
    "loss",
    "chosen",
    "e_engineer",
    "e_ps",
    "e_fs",
    "eq1",
    "eq2",
    "eq3",
    "eq4",
    "margin_engineer",
    "margin_ps",
    "margin_fs",
    "on_boundary",
];

impl Render for PolicyReport {
    fn to_csv(&self) -> String {
        let d = &self.decision;
        let row = vec![
            num(self.params.alpha()),
            opt_num(self.params.beta()),
            num(self.params.v()),
            num(self.params.gain()),
            num(self.params.loss()),
            d.chosen.to_string(),
            num(d.expected_engineer.value()),
            num(d.expected_ps.value()),
            opt_num(d.expected_fs.map(|u| u.value())),
            d.conditions.ps_over_engineer.to_string(),
            opt_bool(d.conditions.fs_over_engineer),
            d.conditions.fs_feasible.to_string(),
            opt_bool(d.conditions.fs_over_ps),
            num(d.margins.engineer),
            num(d.margins.ps),
            opt_num(d.margins.fs),
            joined_conditions(&self.on_boundary),
        ];
        csv(POLICY_COLUMNS, &[row])
    }

    fn to_table(&self) -> String {
        let d = &self.decision;
        let mut pairs = vec![
            ("chosen", d.chosen.to_string()),
            ("E[engineer]", num(d.expected_engineer.value())),
            ("E[ps]", num(d.expected_ps.value())),
            ("E[fs]", opt_num(d.expected_fs.map(|u| u.value()))),
            ("margin engineer", num(d.margins.engineer)),
            ("margin ps", num(d.margins.ps)),
            ("margin fs", opt_num(d.margins.fs)),
            (
                "eq1 (ps > engineer)",
                d.conditions.ps_over_engineer.to_string(),
            ),
            (
                "eq2 (fs > engineer)",
                opt_bool(d.conditions.fs_over_engineer),
            ),
            ("eq3 (fs feasible)", d.conditions.fs_feasible.to_string()),
            ("eq4 (fs > ps)", opt_bool(d.conditions.fs_over_ps)),
        ];
        if !self.on_boundary.is_empty() {
            pairs.push(("on boundary", joined_conditions(&self.on_boundary)));
        }
        kv_table(&pairs)
    }
}

// ── classify ─────────────────────────────────────────────────────────────

const CLASSIFY_COLUMNS: &[&str] = &[
    "alpha",
    "beta",
    "v",
    "gain",
    "loss",
    "region",
    "fs_status",
    "alpha_star_ps",
    "alpha_star_fs",
    "beta_star",
    "beta_star_feasible",
    "beta_double_star",
    "on_boundary",
];

impl Render for ClassifyReport {
    fn to_csv(&self) -> String {
        let (b_star, b_star_ok) = beta_threshold_cells(self.thresholds.beta_star);
        let row = vec![
            num(self.params.alpha()),
            opt_num(self.params.beta()),
            num(self.params.v()),
            num(self.params.gain()),
            num(self.params.loss()),
            self.region.to_string(),
            self.fs_status.to_string(),
            num(self.thresholds.alpha_star_ps),
            num(self.thresholds.alpha_star_fs),
            b_star,
            b_star_ok,
            num(self.thresholds.beta_double_star),
            joined_conditions(&self.on_boundary),
        ];
        csv(CLASSIFY_COLUMNS, &[row])
    }

    fn to_table(&self) -> String {
        let mut pairs = vec![
            ("region", self.region.to_string()),
            ("fs status", self.fs_status.to_string()),
            ("alpha_star_ps", num(self.thresholds.alpha_star_ps)),
            ("alpha_star_fs", num(self.thresholds.alpha_star_fs)),
            ("beta_star", num(self.thresholds.beta_star.raw())),
            (
                "beta_star feasible",
                self.thresholds.beta_star.is_admissible().to_string(),
            ),
            ("beta_double_star", num(self.thresholds.beta_double_star)),
        ];
        if !self.on_boundary.is_empty() {
            pairs.push(("on boundary", joined_conditions(&self.on_boundary)));
        }
        kv_table(&pairs)
    }
}

// ── sweep ────────────────────────────────────────────────────────────────

const GRID_COLUMNS: &[&str] = &[
    "alpha",
    "beta",
    "region",
    "fs_status",
    "chosen",
    "e_ps",
    "e_fs",
    "on_boundary",
];

fn grid_rows(report: &SweepGridReport) -> Vec<Vec<String>> {
    report
        .cells
        .iter()
        .map(|c| {
            vec![
                num(c.alpha),
                num(c.beta),
                c.label.region.to_string(),
                c.label.fs_status.to_string(),
                c.chosen.to_string(),
                num(c.e_ps.value()),
                num(c.e_fs.value()),
                c.on_boundary.to_string(),
            ]
        })
        .collect()
}

impl Render for SweepGridReport {
    fn to_csv(&self) -> String {
        csv(GRID_COLUMNS, &grid_rows(self))
    }

    fn to_table(&self) -> String {
        columns(GRID_COLUMNS, &grid_rows(self))
    }
}

const CURVES_COLUMNS: &[&str] = &[
    "alpha",
    "beta_star",
    "beta_star_feasible",
    "beta_double_star",
    "alpha_star_ps",
    "alpha_star_fs",
];

fn curve_rows(report: &CurvesReport) -> Vec<Vec<String>> {
    report
        .rows
        .iter()
        .map(|r| {
            let (b_star, b_star_ok) = beta_threshold_cells(r.beta_star);
            vec![
                num(r.alpha),
                b_star,
                b_star_ok,
                num(r.beta_double_star),
                num(report.alpha_star_ps),
                num(report.alpha_star_fs),
            ]
        })
        .collect()
}

impl Render for CurvesReport {
    fn to_csv(&self) -> String {
        csv(CURVES_COLUMNS, &curve_rows(self))
    }

    fn to_table(&self) -> String {
        columns(CURVES_COLUMNS, &curve_rows(self))
    }
}

// ── simulate ─────────────────────────────────────────────────────────────

const SIMULATE_COLUMNS: &[&str] = &[
    "mode",
    "alpha",
    "beta",
    "v",
    "gain",
    "loss",
    "trials",
    "seed",
    "mean_payoff",
    "std_error",
    "analytic_mean",
    "deviation",
    "z_score",
    "correct",
    "incorrect",
    "true_accept",
    "false_accept",
    "false_reject",
    "true_reject",
];

impl Render for SimulateReport {
    fn to_csv(&self) -> String {
        let p = &self.config.params;
        let mut row = vec![
            self.config.mode.to_string(),
            num(p.alpha()),
            opt_num(p.beta()),
            num(p.v()),
            num(p.gain()),
            num(p.loss()),
            self.config.trials.to_string(),
            self.config.seed.to_string(),
            num(self.mean_payoff),
            num(self.std_error),
            num(self.comparison.analytic_mean),
            num(self.comparison.deviation),
            num(self.comparison.z_score),
        ];
        let blank = String::new;
        match self.counts {
            OutcomeCounts::Engineer => {
                row.extend([blank(), blank(), blank(), blank(), blank(), blank()])
            }
            OutcomeCounts::PartialSupport { correct, incorrect } => row.extend([
                correct.to_string(),
                incorrect.to_string(),
                blank(),
                blank(),
                blank(),
                blank(),
            ]),
            OutcomeCounts::FullSupport {
                true_accept,
                false_accept,
                false_reject,
                true_reject,
            } => row.extend([
                blank(),
                blank(),
                true_accept.to_string(),
                false_accept.to_string(),
                false_reject.to_string(),
                true_reject.to_string(),
            ]),
        }
        csv(SIMULATE_COLUMNS, &[row])
    }

    fn to_table(&self) -> String {
        let mut pairs = vec![
            ("mode", self.config.mode.to_string()),
            ("trials", self.config.trials.to_string()),
            ("seed", self.config.seed.to_string()),
            ("mean payoff", num(self.mean_payoff)),
            ("std error", num(self.std_error)),
            ("analytic mean", num(self.comparison.analytic_mean)),
            ("deviation", num(self.comparison.deviation)),
            ("z score", num(self.comparison.z_score)),
        ];
        match self.counts {
            OutcomeCounts::Engineer => {}
            OutcomeCounts::PartialSupport { correct, incorrect } => {
                pairs.push(("correct", correct.to_string()));
                pairs.push(("incorrect", incorrect.to_string()));
            }
            OutcomeCounts::FullSupport {
                true_accept,
                false_accept,
                false_reject,
                true_reject,
            } => {
                pairs.push(("true accept", true_accept.to_string()));
                pairs.push(("false accept", false_accept.to_string()));
                pairs.push(("false reject", false_reject.to_string()));
                pairs.push(("true reject", true_reject.to_string()));
            }
        }
        let mut out = kv_table(&pairs);
        if !self.comparison.outcomes.is_empty() {
            out.push('\n');
            let rows: Vec<Vec<String>> = self
                .comparison
                .outcomes
                .iter()
                .map(|o| vec![o.outcome.clone(), num(o.analytic), num(o.empirical)])
                .collect();
            out.push_str(&columns(&["outcome", "analytic", "empirical"], &rows));
        }
        out
    }
}

// ── estimate ─────────────────────────────────────────────────────────────

const ESTIMATE_COLUMNS: &[&str] = &[
    "records",
    "validated",
    "stance",
    "alpha_successes",
    "alpha_n",
    "alpha_point",
    "alpha_low",
    "alpha_high",
    "alpha_used",
    "alpha_repaired",
    "beta_successes",
    "beta_n",
    "beta_point",
    "beta_low",
    "beta_high",
    "beta_used",
    "beta_repaired",
    "chosen",
    "e_engineer",
    "e_ps",
    "e_fs",
];

impl Render for EstimateReport {
    fn to_csv(&self) -> String {
        let a = &self.alpha;
        let mut row = vec![
            self.records.to_string(),
            self.validated.to_string(),
            self.stance.to_string(),
            a.estimate.successes.to_string(),
            a.estimate.n.to_string(),
            num(a.estimate.point),
            num(a.estimate.interval.low),
            num(a.estimate.interval.high),
            num(a.used),
            a.repaired.to_string(),
        ];
        match &self.beta {
            Some(b) => row.extend([
                b.estimate.successes.to_string(),
                b.estimate.n.to_string(),
                num(b.estimate.point),
                num(b.estimate.interval.low),
                num(b.estimate.interval.high),
                num(b.used),
                b.repaired.to_string(),
            ]),
            None => row.extend(std::iter::repeat_with(String::new).take(7)),
        }
        row.extend([
            self.decision.chosen.to_string(),
            num(self.decision.expected_engineer.value()),
            num(self.decision.expected_ps.value()),
            opt_num(self.decision.expected_fs.map(|u| u.value())),
        ]);
        csv(ESTIMATE_COLUMNS, &[row])
    }

    fn to_table(&self) -> String {
        let fmt_input = |i: &deleg_core::EstimateInput| {
            format!(
                "{}/{} point {} interval [{}, {}] used {}{}",
                i.estimate.successes,
                i.estimate.n,
                num(i.estimate.point),
                num(i.estimate.interval.low),
                num(i.estimate.interval.high),
                num(i.used),
                if i.repaired { " (repaired)" } else { "" },
            )
        };
        let mut pairs = vec![
            ("records", self.records.to_string()),
            ("validated", self.validated.to_string()),
            ("stance", self.stance.to_string()),
            ("alpha", fmt_input(&self.alpha)),
        ];
        if let Some(b) = &self.beta {
            pairs.push(("beta", fmt_input(b)));
        }
        pairs.push(("chosen", self.decision.chosen.to_string()));
        pairs.push(("E[engineer]", num(self.decision.expected_engineer.value())));
        pairs.push(("E[ps]", num(self.decision.expected_ps.value())));
        pairs.push((
            "E[fs]",
            opt_num(self.decision.expected_fs.map(|u| u.value())),
        ));
        kv_table(&pairs)
    }
}
