//! Parameter-space exploration: region-map grids over `(alpha, beta)` and
//! the threshold curves that bound them.
//!
//! Grids are specified by explicit step counts, not step sizes, so both
//! endpoints land exactly on the requested values. Output ordering is fixed
//! (row-major, `alpha` outer) regardless of how the cells are computed,
//! which keeps exported CSV diffable.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{DelegationParams, Mode, Utility};
use crate::policy::{
    alpha_star_fs, alpha_star_ps, beta_double_star, beta_star, boundary_conditions,
    classify_region, decide_policy, BetaThreshold, RegionLabel,
};

/// An inclusive, evenly spaced probability range with `steps` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRange")]
pub struct RangeSpec {
    start: f64,
    stop: f64,
    steps: usize,
}

#[derive(Deserialize)]
struct RawRange {
    start: f64,
    stop: f64,
    steps: usize,
}

impl TryFrom<RawRange> for RangeSpec {
    type Error = Error;

    fn try_from(raw: RawRange) -> Result<Self> {
        RangeSpec::new(raw.start, raw.stop, raw.steps)
    }
}

impl RangeSpec {
    /// Requires `0 < start <= stop < 1` and at least two steps.
    pub fn new(start: f64, stop: f64, steps: usize) -> Result<Self> {
        if !start.is_finite() || !stop.is_finite() || start <= 0.0 || stop >= 1.0 || start > stop {
            return Err(Error::InvalidConfig(format!(
                "range {start}:{stop} must satisfy 0 < start <= stop < 1"
            )));
        }
        if steps < 2 {
            return Err(Error::InvalidConfig(format!(
                "range needs at least 2 steps, got {steps}"
            )));
        }
        Ok(RangeSpec { start, stop, steps })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn stop(&self) -> f64 {
        self.stop
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// The lattice points. Endpoints are exact; interior points interpolate.
    pub fn points(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                let t = i as f64 / last;
                self.start * (1.0 - t) + self.stop * t
            })
            .collect()
    }
}

/// A region-map grid request.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub v: f64,
    pub gain: f64,
    pub loss: f64,
    pub alpha: RangeSpec,
    pub beta: RangeSpec,
}

/// One lattice point of a region grid, matching a fresh decision evaluation
/// at the same coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridCell {
    pub alpha: f64,
    pub beta: f64,
    #[serde(flatten)]
    pub label: RegionLabel,
    pub chosen: Mode,
    pub e_ps: Utility,
    pub e_fs: Utility,
    /// True when the point lies within the reporting band of any threshold
    /// boundary; such cells resolve by the same strict comparisons as
    /// everything else.
    pub on_boundary: bool,
}

/// Evaluates the decision model at every `(alpha, beta)` lattice point,
/// row-major with `alpha` as the outer axis.
pub fn region_grid(spec: &GridSpec) -> Result<Vec<GridCell>> {
    // Validate payoffs once up front so an empty grid cannot hide bad input.
    crate::params::check_payoffs(spec.v, spec.gain, spec.loss)?;
    let alphas = spec.alpha.points();
    let betas = spec.beta.points();
    let coords: Vec<(f64, f64)> = alphas
        .iter()
        .flat_map(|&alpha| betas.iter().map(move |&beta| (alpha, beta)))
        .collect();

    let cells: Result<Vec<GridCell>> = coords
        .into_par_iter()
        .map(|(alpha, beta)| {
            let params = DelegationParams::builder()
                .alpha(alpha)
                .beta(beta)
                .v(spec.v)
                .gain(spec.gain)
                .loss(spec.loss)
                .build()?;
            let decision = decide_policy(&params);
            Ok(GridCell {
                alpha,
                beta,
                label: classify_region(&params)?,
                chosen: decision.chosen,
                e_ps: decision.expected_ps,
                e_fs: decision.expected_fs.expect("grid params carry beta"),
                on_boundary: !boundary_conditions(&params).is_empty(),
            })
        })
        .collect();
    cells
}

/// One sampled point of the threshold curves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryRow {
    pub alpha: f64,
    pub beta_star: BetaThreshold,
    pub beta_double_star: f64,
}

/// The two validation-threshold curves plus the two accuracy constants that
/// delimit the regions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryTable {
    pub v: f64,
    pub gain: f64,
    pub loss: f64,
    pub alpha_star_ps: f64,
    pub alpha_star_fs: f64,
    pub rows: Vec<BoundaryRow>,
}

/// Samples both beta-threshold curves at `samples` accuracies spaced evenly
/// across the open interval: `alpha_i = (i + 1) / (samples + 1)`.
pub fn boundary_curves(v: f64, gain: f64, loss: f64, samples: usize) -> Result<BoundaryTable> {
    if samples < 2 {
        return Err(Error::InvalidConfig(format!(
            "boundary curves need at least 2 samples, got {samples}"
        )));
    }
    let a_ps = alpha_star_ps(v, gain, loss)?;
    let a_fs = alpha_star_fs(v, gain)?;

    let rows = (1..=samples)
        .map(|i| {
            let alpha = i as f64 / (samples + 1) as f64;
            Ok(BoundaryRow {
                alpha,
                beta_star: beta_star(alpha, v, gain, loss)?,
                beta_double_star: beta_double_star(alpha, gain, loss)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(BoundaryTable {
        v,
        gain,
        loss,
        alpha_star_ps: a_ps,
        alpha_star_fs: a_fs,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::policy::{FsStatus, Region};

    #[test]
    fn range_endpoints_are_exact() {
        let r = RangeSpec::new(0.05, 0.95, 19).unwrap();
        let pts = r.points();
        assert_eq!(pts.len(), 19);
        assert_eq!(pts[0], 0.05);
        assert_eq!(pts[18], 0.95);
        for w in pts.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn range_validation() {
        assert!(RangeSpec::new(0.0, 0.5, 3).is_err());
        assert!(RangeSpec::new(0.1, 1.0, 3).is_err());
        assert!(RangeSpec::new(0.6, 0.5, 3).is_err());
        assert!(RangeSpec::new(0.1, 0.5, 1).is_err());
        assert!(RangeSpec::new(0.5, 0.5, 2).is_ok());
    }

    fn three_by_three() -> GridSpec {
        GridSpec {
            v: 0.5,
            gain: 1.0,
            loss: -1.0,
            alpha: RangeSpec::new(0.25, 0.75, 3).unwrap(),
            beta: RangeSpec::new(0.25, 0.75, 3).unwrap(),
        }
    }

    #[test]
    fn grid_is_row_major_alpha_outer() {
        let cells = region_grid(&three_by_three()).unwrap();
        assert_eq!(cells.len(), 9);
        let coords: Vec<(f64, f64)> = cells.iter().map(|c| (c.alpha, c.beta)).collect();
        assert_eq!(coords[0], (0.25, 0.25));
        assert_eq!(coords[1], (0.25, 0.5));
        assert_eq!(coords[2], (0.25, 0.75));
        assert_eq!(coords[3], (0.5, 0.25));
        assert_eq!(coords[8], (0.75, 0.75));
    }

    #[test]
    fn grid_regions_match_point_classification() {
        let cells = region_grid(&three_by_three()).unwrap();
        // alpha <= alpha_star_fs = 0.5 is region A, including the boundary.
        for c in cells.iter().filter(|c| c.alpha <= 0.5) {
            assert_eq!(c.label.region, Region::A, "alpha {}", c.alpha);
            assert_eq!(c.label.fs_status, FsStatus::NotApplicable);
        }
        // alpha = 0.75 sits exactly on alpha_star_ps: region B, flagged.
        for c in cells.iter().filter(|c| c.alpha == 0.75) {
            assert_eq!(c.label.region, Region::B);
            assert_eq!(c.label.fs_status, FsStatus::FsLoses);
            assert!(c.on_boundary);
        }
    }

    #[test]
    fn grid_cells_equal_fresh_evaluations() {
        let spec = GridSpec {
            v: 0.4,
            gain: 2.0,
            loss: -1.5,
            alpha: RangeSpec::new(0.15, 0.85, 5).unwrap(),
            beta: RangeSpec::new(0.2, 0.9, 4).unwrap(),
        };
        for cell in region_grid(&spec).unwrap() {
            let params = DelegationParams::builder()
                .alpha(cell.alpha)
                .beta(cell.beta)
                .v(spec.v)
                .gain(spec.gain)
                .loss(spec.loss)
                .build()
                .unwrap();
            let decision = decide_policy(&params);
            assert_eq!(cell.chosen, decision.chosen);
            assert_eq!(cell.e_ps, decision.expected_ps);
            assert_eq!(cell.e_fs, decision.expected_fs.unwrap());
            assert_eq!(cell.label, classify_region(&params).unwrap());
        }
    }

    #[test]
    fn regions_weakly_monotone_along_alpha() {
        let spec = GridSpec {
            v: 0.45,
            gain: 1.0,
            loss: -1.0,
            alpha: RangeSpec::new(0.05, 0.95, 19).unwrap(),
            beta: RangeSpec::new(0.05, 0.95, 7).unwrap(),
        };
        let cells = region_grid(&spec).unwrap();
        for b in 0..7 {
            let mut previous = Region::A;
            for a in 0..19 {
                let region = cells[a * 7 + b].label.region;
                assert!(region >= previous, "regions regressed along alpha");
                previous = region;
            }
        }
    }

    #[test]
    fn grid_rejects_bad_payoffs() {
        let mut spec = three_by_three();
        spec.v = 1.5;
        assert!(region_grid(&spec).is_err());
    }

    #[test]
    fn curve_table_constants_and_limits() {
        let table = boundary_curves(0.5, 1.0, -1.0, 99).unwrap();
        assert_eq!(table.alpha_star_ps, 0.75);
        assert_eq!(table.alpha_star_fs, 0.5);
        assert_eq!(table.rows.len(), 99);

        // the two beta curves meet at alpha_star_ps
        let at_aps = table
            .rows
            .iter()
            .find(|r| (r.alpha - 0.75).abs() < 1e-12)
            .unwrap();
        assert!((at_aps.beta_star.raw() - 0.75).abs() < 1e-12);
        assert!((at_aps.beta_double_star - 0.75).abs() < 1e-12);

        // beta_star tends to v as alpha approaches 1
        let last = table.rows.last().unwrap();
        assert!((last.beta_star.raw() - 0.5).abs() < 0.02);

        // raising v pushes the PS threshold right
        let low = boundary_curves(0.2, 1.0, -1.0, 9).unwrap();
        let high = boundary_curves(0.6, 1.0, -1.0, 9).unwrap();
        assert_eq!(low.alpha_star_ps, 0.6);
        assert_eq!(high.alpha_star_ps, 0.8);
    }

    #[test]
    fn sampled_beta_star_flips_the_engineer_comparison() {
        let (v, gain, loss) = (0.35, 1.5, -0.8);
        let table = boundary_curves(v, gain, loss, 49).unwrap();
        let e_fs = |alpha: f64, beta: f64| {
            alpha * beta * gain + (1.0 - alpha) * (1.0 - beta) * loss
        };
        let eps = 1e-6;
        for row in &table.rows {
            if let Some(b) = row.beta_star.admissible() {
                if b - eps > 0.0 && b + eps < 1.0 {
                    assert!(e_fs(row.alpha, b + eps) > v, "alpha {}", row.alpha);
                    assert!(e_fs(row.alpha, b - eps) < v, "alpha {}", row.alpha);
                }
            }
        }
    }

    #[test]
    fn curve_samples_stay_inside_open_interval() {
        let table = boundary_curves(0.3, 1.0, -1.0, 2).unwrap();
        let alphas: Vec<f64> = table.rows.iter().map(|r| r.alpha).collect();
        assert!(alphas.iter().all(|a| *a > 0.0 && *a < 1.0));
        assert!(boundary_curves(0.3, 1.0, -1.0, 1).is_err());
    }
}
