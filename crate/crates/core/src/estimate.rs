//! Estimating the model's input probabilities from logged trials.
//!
//! The decision model treats `alpha` and `beta` as known. In practice they
//! come from logs: runs of the generator against gold-labelled requests, and
//! validation verdicts recorded alongside. This module turns such logs into
//! [`RateEstimate`]s — a point proportion with a Wilson score interval — and
//! into decisions that respect the estimation uncertainty.
//!
//! # Wilson score interval
//!
//! For `s` successes in `n` trials at confidence `1 - a`, with
//! `z = probit(1 - a/2)` and `p = s/n`:
//!
//! ```text
//! center = (p + z^2 / 2n) / (1 + z^2 / n)
//! radius = z * sqrt(p(1-p)/n + z^2/4n^2) / (1 + z^2 / n)
//! ```
//!
//! Unlike the normal approximation, the interval never collapses to a point
//! at `s = 0` or `s = n` and always stays inside `[0, 1]`. Worked example:
//! 91 successes in 100 trials at 95% give point 0.91 and interval
//! (0.8377, 0.9519).
//!
//! # Log format
//!
//! Logs are ingested as JSON Lines (one object per line) or CSV, with
//! exactly these fields:
//!
//! - `trial_id` — string, unique within the log
//! - `generated_correct` — boolean, gold-label comparison of the result
//! - `validation_verdict` — `"AcceptedAsCorrect"`, `"RejectedAsIncorrect"`,
//!   or null/absent (empty in CSV) for trials without a validation pass
//!
//! Malformed lines fail with the 1-based line number.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::DelegationParams;
use crate::policy::{decide_policy, PolicyDecision};

/// A user's verdict on one generated result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    AcceptedAsCorrect,
    RejectedAsIncorrect,
}

/// One logged generation (and optionally validation) trial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrialRecord {
    pub trial_id: String,
    pub generated_correct: bool,
    #[serde(default)]
    pub validation_verdict: Option<Verdict>,
}

impl TrialRecord {
    /// Whether the recorded validation got it right: accepting a correct
    /// result or rejecting an incorrect one. `None` without a verdict.
    pub fn validation_successful(&self) -> Option<bool> {
        self.validation_verdict.map(|verdict| match verdict {
            Verdict::AcceptedAsCorrect => self.generated_correct,
            Verdict::RejectedAsIncorrect => !self.generated_correct,
        })
    }
}

/// A closed interval of proportions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub low: f64,
    pub high: f64,
}

/// An estimated proportion with its Wilson score interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RateEstimate {
    pub successes: u64,
    pub n: u64,
    pub point: f64,
    pub interval: Interval,
    pub confidence: f64,
}

impl RateEstimate {
    /// Builds an estimate directly from counts. `n` must be positive,
    /// `successes <= n`, and `confidence` strictly inside `(0, 1)`.
    pub fn from_counts(successes: u64, n: u64, confidence: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InsufficientData(
                "cannot estimate a rate from zero trials".into(),
            ));
        }
        if successes > n {
            return Err(Error::InvalidConfig(format!(
                "successes ({successes}) exceed trials ({n})"
            )));
        }
        if !confidence.is_finite() || confidence <= 0.0 || confidence >= 1.0 {
            return Err(Error::invalid(
                "confidence",
                confidence,
                "0 < confidence < 1",
            ));
        }

        let nf = n as f64;
        let p = successes as f64 / nf;
        let z = probit(1.0 - (1.0 - confidence) / 2.0);
        let z2 = z * z;
        let denom = 1.0 + z2 / nf;
        let center = (p + z2 / (2.0 * nf)) / denom;
        let radius = z * (p * (1.0 - p) / nf + z2 / (4.0 * nf * nf)).sqrt() / denom;

        // At the extreme counts the bound coincides with the endpoint
        // analytically; pin it there rather than leave rounding dust.
        let low = if successes == 0 {
            0.0
        } else {
            (center - radius).max(0.0)
        };
        let high = if successes == n {
            1.0
        } else {
            (center + radius).min(1.0)
        };

        Ok(RateEstimate {
            successes,
            n,
            point: p,
            interval: Interval { low, high },
            confidence,
        })
    }
}

/// Estimates the generation accuracy: the fraction of trials whose result
/// was correct.
pub fn estimate_alpha(log: &[TrialRecord], confidence: f64) -> Result<RateEstimate> {
    if log.is_empty() {
        return Err(Error::InsufficientData(
            "trial log is empty; accuracy needs at least one record".into(),
        ));
    }
    let successes = log.iter().filter(|r| r.generated_correct).count() as u64;
    RateEstimate::from_counts(successes, log.len() as u64, confidence)
}

/// Estimates the validation effectiveness: the fraction of verdict-bearing
/// trials whose verdict was right. Records without a verdict are excluded.
pub fn estimate_beta(log: &[TrialRecord], confidence: f64) -> Result<RateEstimate> {
    let verdicts: Vec<bool> = log
        .iter()
        .filter_map(TrialRecord::validation_successful)
        .collect();
    if verdicts.is_empty() {
        return Err(Error::InsufficientData(
            "no records carry a validation verdict; cannot estimate effectiveness".into(),
        ));
    }
    let successes = verdicts.iter().filter(|&&ok| ok).count() as u64;
    RateEstimate::from_counts(successes, verdicts.len() as u64, confidence)
}

/// How estimated rates enter the decision model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stance {
    /// Feed the point estimates; reproduces the plain decision on them.
    #[serde(rename = "point")]
    PointEstimate,
    /// Feed the interval lower bounds of both rates. Deliberately biased
    /// towards the engineer: an AI mode is selected only if it beats `v`
    /// even under the pessimistic read of the data.
    #[serde(rename = "conservative")]
    ConservativeLowerBound,
}

impl std::fmt::Display for Stance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Stance::PointEstimate => "point",
            Stance::ConservativeLowerBound => "conservative",
        };
        f.write_str(s)
    }
}

/// One rate as it entered the decision, with its provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimateInput {
    pub estimate: RateEstimate,
    /// The value fed to the decision model, after any repair.
    pub used: f64,
    /// True when the raw value sat on 0 or 1 and was nudged inward to
    /// `1/(2n)` or `1 - 1/(2n)`; the model needs open-interval inputs.
    pub repaired: bool,
}

/// A decision derived from estimated rates rather than known ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateDecision {
    pub stance: Stance,
    pub alpha: EstimateInput,
    pub beta: Option<EstimateInput>,
    pub decision: PolicyDecision,
}

/// Runs the decision model on estimated rates.
///
/// Without a `beta` estimate only Engineer and PS compete. Values of
/// exactly 0 or 1 (possible at extreme counts) are repaired to the open
/// interval before entering the model; the repair is reported in the output.
pub fn decide_from_estimates(
    alpha_est: &RateEstimate,
    beta_est: Option<&RateEstimate>,
    v: f64,
    gain: f64,
    loss: f64,
    stance: Stance,
) -> Result<EstimateDecision> {
    let alpha = stance_input(alpha_est, stance);
    let beta = beta_est.map(|est| stance_input(est, stance));

    let mut builder = DelegationParams::builder()
        .alpha(alpha.used)
        .v(v)
        .gain(gain)
        .loss(loss);
    if let Some(b) = &beta {
        builder = builder.beta(b.used);
    }
    let params = builder.build()?;

    Ok(EstimateDecision {
        stance,
        alpha,
        beta,
        decision: decide_policy(&params),
    })
}

fn stance_input(est: &RateEstimate, stance: Stance) -> EstimateInput {
    let raw = match stance {
        Stance::PointEstimate => est.point,
        Stance::ConservativeLowerBound => est.interval.low,
    };
    let floor = 1.0 / (2.0 * est.n as f64);
    let (used, repaired) = if raw <= 0.0 {
        (floor, true)
    } else if raw >= 1.0 {
        (1.0 - floor, true)
    } else {
        (raw, false)
    };
    EstimateInput {
        estimate: *est,
        used,
        repaired,
    }
}

// ── Log ingestion ────────────────────────────────────────────────────────

/// Reads a JSON Lines trial log. Blank lines are skipped; anything else
/// must parse as a [`TrialRecord`].
pub fn read_trials_jsonl<R: BufRead>(reader: R) -> Result<Vec<TrialRecord>> {
    let mut records = Vec::new();
    let mut seen = HashSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx as u64 + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: TrialRecord = serde_json::from_str(&line).map_err(|e| Error::Ingestion {
            line: line_no,
            message: e.to_string(),
        })?;
        check_unique(&mut seen, &record, line_no)?;
        records.push(record);
    }
    Ok(records)
}

/// Reads a CSV trial log with a header row naming the same fields as the
/// JSON Lines format. An empty `validation_verdict` field means "no
/// validation pass".
pub fn read_trials_csv<R: Read>(reader: R) -> Result<Vec<TrialRecord>> {
    let mut csv_reader = csv::Reader::from_reader(reader);
    let mut records = Vec::new();
    let mut seen = HashSet::new();
    let mut raw = csv::StringRecord::new();
    let headers = csv_reader.headers().map_err(csv_error)?.clone();
    loop {
        match csv_reader.read_record(&mut raw) {
            Ok(false) => break,
            Ok(true) => {
                let line_no = raw.position().map_or(0, |p| p.line());
                let record: TrialRecord =
                    raw.deserialize(Some(&headers))
                        .map_err(|e| Error::Ingestion {
                            line: line_no,
                            message: e.to_string(),
                        })?;
                check_unique(&mut seen, &record, line_no)?;
                records.push(record);
            }
            Err(e) => return Err(csv_error(e)),
        }
    }
    Ok(records)
}

/// Loads a trial log from disk, picking the format by file extension:
/// `.csv` is CSV, everything else is treated as JSON Lines.
pub fn load_trials(path: &Path) -> Result<Vec<TrialRecord>> {
    let file = File::open(path)?;
    if path
        .extension()
        .is_some_and(|ext| ext.eq_ignore_ascii_case("csv"))
    {
        read_trials_csv(file)
    } else {
        read_trials_jsonl(BufReader::new(file))
    }
}

fn check_unique(seen: &mut HashSet<String>, record: &TrialRecord, line: u64) -> Result<()> {
    if !seen.insert(record.trial_id.clone()) {
        return Err(Error::Ingestion {
            line,
            message: format!("duplicate trial_id `{}`", record.trial_id),
        });
    }
    Ok(())
}

fn csv_error(e: csv::Error) -> Error {
    let line = e.position().map_or(0, |p| p.line());
    Error::Ingestion {
        line,
        message: e.to_string(),
    }
}

// ── Normal quantile ──────────────────────────────────────────────────────

pub use quantile::probit;

mod quantile {
    // Coefficients kept at their published precision; the extra digits
    // round away harmlessly.
    #![allow(clippy::excessive_precision)]

    /// Inverse standard normal CDF (Wichura's AS241, double precision).
    /// Absolute error is below 1e-15 across `(0, 1)`.
    pub fn probit(p: f64) -> f64 {
        debug_assert!(p > 0.0 && p < 1.0);
        let q = p - 0.5;
        if q.abs() <= 0.425 {
            let r = 0.180625 - q * q;
            return q * poly(&PROBIT_A, r) / poly(&PROBIT_B, r);
        }
        let mut r = if q < 0.0 { p } else { 1.0 - p };
        r = (-r.ln()).sqrt();
        let value = if r <= 5.0 {
            let r = r - 1.6;
            poly(&PROBIT_C, r) / poly(&PROBIT_D, r)
        } else {
            let r = r - 5.0;
            poly(&PROBIT_E, r) / poly(&PROBIT_F, r)
        };
        if q < 0.0 {
            -value
        } else {
            value
        }
    }

    fn poly(coeffs: &[f64], x: f64) -> f64 {
        coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    const PROBIT_A: [f64; 8] = [
        3.387_132_872_796_366_608e0,
        1.331_416_678_917_843_774_5e2,
        1.971_590_950_306_551_442_7e3,
        1.373_169_376_550_946_112_5e4,
        4.592_195_393_154_987_145_7e4,
        6.726_577_092_700_870_085_3e4,
        3.343_057_558_358_812_810_5e4,
        2.509_080_928_730_122_672_7e3,
    ];
    const PROBIT_B: [f64; 8] = [
        1.0,
        4.231_333_070_160_091_125_2e1,
        6.871_870_074_920_579_083e2,
        5.394_196_021_424_751_107_7e3,
        2.121_379_430_158_659_586_7e4,
        3.930_789_580_009_271_061e4,
        2.872_908_573_572_194_267_4e4,
        5.226_495_278_852_854_561e3,
    ];
    const PROBIT_C: [f64; 8] = [
        1.423_437_110_749_683_577_34e0,
        4.630_337_846_156_545_295_9e0,
        5.769_497_221_460_691_405_5e0,
        3.647_848_324_763_204_605_04e0,
        1.270_458_252_452_368_382_58e0,
        2.417_807_251_774_506_117_7e-1,
        2.272_384_498_926_918_458_33e-2,
        7.745_450_142_783_414_076_4e-4,
    ];
    const PROBIT_D: [f64; 8] = [
        1.0,
        2.053_191_626_637_758_821_87e0,
        1.676_384_830_183_803_849_4e0,
        6.897_673_349_851_000_045_5e-1,
        1.481_039_764_274_800_745_9e-1,
        1.519_866_656_361_645_719_66e-2,
        5.475_938_084_995_344_946e-4,
        1.050_750_071_644_416_843_24e-9,
    ];
    const PROBIT_E: [f64; 8] = [
        6.657_904_643_501_103_777_2e0,
        5.463_784_911_164_114_369_9e0,
        1.784_826_539_917_291_335_8e0,
        2.965_605_718_285_048_912_3e-1,
        2.653_218_952_657_612_309_3e-2,
        1.242_660_947_388_078_438_6e-3,
        2.711_555_568_743_487_578_15e-5,
        2.010_334_399_292_288_132_65e-7,
    ];
    const PROBIT_F: [f64; 8] = [
        1.0,
        5.998_322_065_558_879_376_9e-1,
        1.369_298_809_227_358_053_1e-1,
        1.487_536_129_085_061_485_25e-2,
        7.868_691_311_456_132_591e-4,
        1.846_318_317_510_054_681_8e-5,
        1.421_511_758_316_445_888_7e-7,
        2.044_263_103_389_939_785_64e-15,
    ];
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn probit_matches_reference_quantiles() {
        assert!((probit(0.5)).abs() < 1e-15);
        assert!((probit(0.975) - 1.959_963_984_540_054).abs() < 1e-12);
        assert!((probit(0.025) + 1.959_963_984_540_054).abs() < 1e-12);
        assert!((probit(0.995) - 2.575_829_303_548_900_4).abs() < 1e-12);
        assert!((probit(0.9) - 1.281_551_565_544_600_4).abs() < 1e-12);
        assert!((probit(1e-10) + 6.361_340_902_404_056).abs() < 1e-9);
    }

    #[test]
    fn wilson_worked_example() {
        let est = RateEstimate::from_counts(91, 100, 0.95).unwrap();
        assert_eq!(est.point, 0.91);
        assert!((est.interval.low - 0.837_738).abs() < 1e-4);
        assert!((est.interval.high - 0.951_928).abs() < 1e-4);
    }

    #[test]
    fn wilson_never_degenerates_at_zero() {
        let est = RateEstimate::from_counts(0, 10, 0.95).unwrap();
        assert_eq!(est.point, 0.0);
        assert_eq!(est.interval.low, 0.0);
        assert!(est.interval.high > 0.0);
    }

    #[test]
    fn from_counts_validation() {
        assert!(RateEstimate::from_counts(1, 0, 0.95).is_err());
        assert!(RateEstimate::from_counts(5, 4, 0.95).is_err());
        assert!(RateEstimate::from_counts(1, 4, 1.0).is_err());
        assert!(RateEstimate::from_counts(1, 4, 0.0).is_err());
    }

    fn record(id: &str, correct: bool, verdict: Option<Verdict>) -> TrialRecord {
        TrialRecord {
            trial_id: id.to_string(),
            generated_correct: correct,
            validation_verdict: verdict,
        }
    }

    /// Hand-enumerated 20-record log: 13 correct generations; of the 12
    /// verdict-bearing records, 9 verdicts are right.
    fn mixed_log() -> Vec<TrialRecord> {
        use Verdict::*;
        let mut log = Vec::new();
        // 8 correct, accepted (validation right)
        for i in 0..8 {
            log.push(record(&format!("ca{i}"), true, Some(AcceptedAsCorrect)));
        }
        // 2 correct, rejected (validation wrong)
        for i in 0..2 {
            log.push(record(&format!("cr{i}"), true, Some(RejectedAsIncorrect)));
        }
        // 1 incorrect, rejected (validation right)
        log.push(record("ir0", false, Some(RejectedAsIncorrect)));
        // 1 incorrect, accepted (validation wrong)
        log.push(record("ia0", false, Some(AcceptedAsCorrect)));
        // 3 correct without verdict, 5 incorrect without verdict
        for i in 0..3 {
            log.push(record(&format!("c{i}"), true, None));
        }
        for i in 0..5 {
            log.push(record(&format!("i{i}"), false, None));
        }
        log
    }

    #[test]
    fn estimates_match_hand_enumeration() {
        let log = mixed_log();
        let alpha = estimate_alpha(&log, 0.95).unwrap();
        assert_eq!(alpha.successes, 13);
        assert_eq!(alpha.n, 20);
        assert_eq!(alpha.point, 13.0 / 20.0);

        let beta = estimate_beta(&log, 0.95).unwrap();
        assert_eq!(beta.successes, 9);
        assert_eq!(beta.n, 12);
        assert_eq!(beta.point, 9.0 / 12.0);
    }

    #[test]
    fn empty_logs_are_insufficient() {
        assert!(matches!(
            estimate_alpha(&[], 0.95),
            Err(Error::InsufficientData(_))
        ));
        let no_verdicts = vec![record("a", true, None)];
        assert!(matches!(
            estimate_beta(&no_verdicts, 0.95),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn all_accepted_correct_log_repairs_to_open_interval() {
        let log: Vec<TrialRecord> = (0..10)
            .map(|i| record(&format!("t{i}"), true, Some(Verdict::AcceptedAsCorrect)))
            .collect();
        let beta = estimate_beta(&log, 0.95).unwrap();
        assert_eq!(beta.point, 1.0);

        let alpha = estimate_alpha(&log, 0.95).unwrap();
        let d = decide_from_estimates(&alpha, Some(&beta), 0.5, 1.0, -1.0, Stance::PointEstimate)
            .unwrap();
        assert!(d.alpha.repaired);
        assert_eq!(d.alpha.used, 1.0 - 1.0 / 20.0);
        assert!(d.beta.unwrap().repaired);
    }

    #[test]
    fn point_stance_matches_plain_decision() {
        let alpha = RateEstimate::from_counts(91, 100, 0.95).unwrap();
        let beta = RateEstimate::from_counts(80, 100, 0.95).unwrap();
        let d = decide_from_estimates(&alpha, Some(&beta), 0.5, 1.0, -1.0, Stance::PointEstimate)
            .unwrap();
        let direct = decide_policy(&DelegationParams::fs(0.91, 0.8, 0.5).unwrap());
        assert_eq!(d.decision, direct);
        assert_eq!(d.decision.expected_ps.value(), direct.expected_ps.value());
    }

    #[test]
    fn conservative_stance_with_wide_interval_prefers_engineer() {
        // 10 of 11 correct: point 0.909 clears alpha_star_ps = 0.75, but the
        // 95% lower bound (~0.62) does not.
        let alpha = RateEstimate::from_counts(10, 11, 0.95).unwrap();
        assert!(alpha.point > 0.75);
        assert!(alpha.interval.low < 0.75);

        let point =
            decide_from_estimates(&alpha, None, 0.5, 1.0, -1.0, Stance::PointEstimate).unwrap();
        let cons =
            decide_from_estimates(&alpha, None, 0.5, 1.0, -1.0, Stance::ConservativeLowerBound)
                .unwrap();
        assert_eq!(point.decision.chosen, crate::params::Mode::PartialSupport);
        assert_eq!(cons.decision.chosen, crate::params::Mode::Engineer);
    }

    #[test]
    fn without_beta_fs_is_never_chosen() {
        let alpha = RateEstimate::from_counts(99, 100, 0.95).unwrap();
        let d = decide_from_estimates(&alpha, None, 0.1, 1.0, -1.0, Stance::PointEstimate).unwrap();
        assert!(d.beta.is_none());
        assert!(d.decision.expected_fs.is_none());
        assert_ne!(d.decision.chosen, crate::params::Mode::FullSupport);
    }

    #[test]
    fn jsonl_round_trip_and_errors() {
        let good = "\
{\"trial_id\":\"t1\",\"generated_correct\":true,\"validation_verdict\":\"AcceptedAsCorrect\"}\n\
\n\
{\"trial_id\":\"t2\",\"generated_correct\":false,\"validation_verdict\":null}\n\
{\"trial_id\":\"t3\",\"generated_correct\":false}\n";
        let records = read_trials_jsonl(good.as_bytes()).unwrap();
        assert_eq!(records.len(), 3);
        assert_eq!(
            records[0].validation_verdict,
            Some(Verdict::AcceptedAsCorrect)
        );
        assert_eq!(records[1].validation_verdict, None);
        assert_eq!(records[2].validation_verdict, None);

        let malformed = "{\"trial_id\":\"t1\",\"generated_correct\":true}\nnot json\n";
        match read_trials_jsonl(malformed.as_bytes()) {
            Err(Error::Ingestion { line: 2, .. }) => {}
            other => panic!("expected line-2 ingestion error, got {other:?}"),
        }

        let dupes = "{\"trial_id\":\"t1\",\"generated_correct\":true}\n\
{\"trial_id\":\"t1\",\"generated_correct\":false}\n";
        match read_trials_jsonl(dupes.as_bytes()) {
            Err(Error::Ingestion { line: 2, message }) => {
                assert!(message.contains("duplicate"));
            }
            other => panic!("expected duplicate-id error, got {other:?}"),
        }
    }

    #[test]
    fn csv_round_trip_and_errors() {
        let good = "trial_id,generated_correct,validation_verdict\n\
t1,true,AcceptedAsCorrect\n\
t2,false,\n";
        let records = read_trials_csv(good.as_bytes()).unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(
            records[0].validation_verdict,
            Some(Verdict::AcceptedAsCorrect)
        );
        assert_eq!(records[1].validation_verdict, None);

        let malformed = "trial_id,generated_correct,validation_verdict\n\
t1,maybe,\n";
        match read_trials_csv(malformed.as_bytes()) {
            Err(Error::Ingestion { line: 2, .. }) => {}
            other => panic!("expected line-2 ingestion error, got {other:?}"),
        }
    }
}
