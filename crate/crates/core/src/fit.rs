//! Ordinary least squares in log10-log10 space.
//!
//! Both power laws are fitted as straight lines on decade-scaled axes. The
//! slope is the exponent and the intercept is `log10` of the constant.

use serde::Serialize;
use thiserror::Error;

use crate::rankfreq::{FrequencyTable, RankTable};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("need at least 2 points with distinct x after filtering, have {used}")]
    InsufficientData { used: usize },
    #[error("all x values are equal; slope is undefined")]
    DegenerateX,
    #[error("point {index} = ({x}, {y}) is outside the log domain (both coordinates must be finite and > 0)")]
    Domain { index: usize, x: f64, y: f64 },
}

/// Which coordinate of a point holds the node degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeAxis {
    /// Frequency plots: `(degree, frequency)`.
    X,
    /// Rank plots: `(rank, degree)`.
    Y,
}

/// Outlier policy applied before fitting.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct FitFilter {
    /// Drop points whose degree is exactly 1.
    pub exclude_degree_one: bool,
    /// Drop points whose partner value is exactly 1 and whose degree exceeds
    /// the threshold (the singleton tail of a frequency plot).
    pub singleton_tail_threshold: Option<u64>,
}

impl FitFilter {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn exclude_degree_one() -> Self {
        FitFilter {
            exclude_degree_one: true,
            singleton_tail_threshold: None,
        }
    }

    pub fn singleton_tail(threshold: u64) -> Self {
        FitFilter {
            exclude_degree_one: false,
            singleton_tail_threshold: Some(threshold),
        }
    }

    fn discards(&self, degree: f64, value: f64) -> bool {
        if self.exclude_degree_one && degree == 1.0 {
            return true;
        }
        match self.singleton_tail_threshold {
            Some(k) => value == 1.0 && degree > k as f64,
            None => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub slope: f64,
    /// `log10` of the fitted constant.
    pub intercept: f64,
    /// Pearson correlation of the log pairs.
    pub correlation: f64,
    pub points_used: usize,
    pub points_discarded: usize,
    /// Smallest and largest `log10 x` among the points used.
    pub log_x_range: (f64, f64),
}

impl PowerLawFit {
    /// The constant in `y = C * x^slope`.
    pub fn constant(&self) -> f64 {
        10f64.powf(self.intercept)
    }

    /// Fitted `log10 y` at `log10 x`.
    pub fn predict_log(&self, log_x: f64) -> f64 {
        self.intercept + self.slope * log_x
    }

    /// The two endpoints of the fitted line over the fitted x range, in log10 space.
    pub fn line_endpoints(&self) -> [(f64, f64); 2] {
        let (lo, hi) = self.log_x_range;
        [(lo, self.predict_log(lo)), (hi, self.predict_log(hi))]
    }
}

/// Removes filtered points, preserving order. Returns the survivors and the
/// number removed.
pub fn apply_filter(
    points: &[(f64, f64)],
    axis: DegreeAxis,
    filter: &FitFilter,
) -> (Vec<(f64, f64)>, usize) {
    let kept: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&(x, y)| {
            let (degree, value) = match axis {
                DegreeAxis::X => (x, y),
                DegreeAxis::Y => (y, x),
            };
            !filter.discards(degree, value)
        })
        .collect();
    let discarded = points.len() - kept.len();
    (kept, discarded)
}

/// Fits `log10 y = intercept + slope * log10 x` by unweighted least squares.
pub fn fit_loglog(
    points: &[(f64, f64)],
    axis: DegreeAxis,
    filter: &FitFilter,
) -> Result<PowerLawFit, FitError> {
    for (index, &(x, y)) in points.iter().enumerate() {
        if !(x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite()) {
            return Err(FitError::Domain { index, x, y });
        }
    }
    let (kept, discarded) = apply_filter(points, axis, filter);
    if kept.len() < 2 {
        return Err(FitError::InsufficientData { used: kept.len() });
    }

    let logs: Vec<(f64, f64)> = kept.iter().map(|&(x, y)| (x.log10(), y.log10())).collect();
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &(lx, ly) in &logs {
        let dx = lx - mean_x;
        let dy = ly - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
        lo = lo.min(lx);
        hi = hi.max(lx);
    }
    if sxx == 0.0 {
        return Err(FitError::DegenerateX);
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let correlation = if syy == 0.0 {
        0.0
    } else {
        (sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0)
    };

    Ok(PowerLawFit {
        slope,
        intercept,
        correlation,
        points_used: logs.len(),
        points_discarded: discarded,
        log_x_range: (lo, hi),
    })
}

/// `(rank, degree)` points of a rank table.
pub fn rank_points(table: &RankTable) -> Vec<(f64, f64)> {
    table.entries().map(|(r, d)| (r as f64, d as f64)).collect()
}

/// `(degree, frequency)` points of a frequency table.
pub fn frequency_points(table: &FrequencyTable) -> Vec<(f64, f64)> {
    table
        .entries()
        .iter()
        .map(|&(d, f)| (d as f64, f as f64))
        .collect()
}

/// Fits the rank law `d = C1 * r^R`; the slope is `R`.
pub fn fit_rank_law(table: &RankTable, filter: &FitFilter) -> Result<PowerLawFit, FitError> {
    fit_loglog(&rank_points(table), DegreeAxis::Y, filter)
}

/// Fits the frequency law `f_d = C2 * d^O`; the slope is `O`.
pub fn fit_frequency_law(
    table: &FrequencyTable,
    filter: &FitFilter,
) -> Result<PowerLawFit, FitError> {
    fit_loglog(&frequency_points(table), DegreeAxis::X, filter)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let pts = [(1.0, 10.0), (2.0, 2.5), (4.0, 0.625), (8.0, 0.15625)];
        let fit = fit_loglog(&pts, DegreeAxis::X, &FitFilter::none()).unwrap();
        assert!((fit.slope + 2.0).abs() < 1e-12);
        assert!((fit.intercept - 1.0).abs() < 1e-12);
        assert!((fit.correlation + 1.0).abs() < 1e-12);
        assert_eq!(fit.points_used, 4);
        assert_eq!(fit.points_discarded, 0);
        assert!((fit.constant() - 10.0).abs() < 1e-10);
    }

    #[test]
    fn two_points() {
        let fit = fit_loglog(&[(1.0, 8.0), (2.0, 1.0)], DegreeAxis::X, &FitFilter::none()).unwrap();
        assert!((fit.slope + 3.0).abs() < 1e-12);
    }

    #[test]
    fn filter_examples() {
        let pts = [(1.0, 3.0), (2.0, 2.0), (3.0, 1.0)];
        let (kept, n) = apply_filter(&pts, DegreeAxis::X, &FitFilter::exclude_degree_one());
        assert_eq!(kept, vec![(2.0, 2.0), (3.0, 1.0)]);
        assert_eq!(n, 1);

        let pts = [(30.0, 2.0), (40.0, 1.0), (50.0, 1.0)];
        let (kept, n) = apply_filter(&pts, DegreeAxis::X, &FitFilter::singleton_tail(33));
        assert_eq!(kept, vec![(30.0, 2.0)]);
        assert_eq!(n, 2);
    }

    #[test]
    fn filter_on_rank_axis_reads_degree_from_y() {
        let pts = [(1.0, 4.0), (2.0, 2.0), (3.0, 1.0), (4.0, 1.0)];
        let (kept, n) = apply_filter(&pts, DegreeAxis::Y, &FitFilter::exclude_degree_one());
        assert_eq!(kept, vec![(1.0, 4.0), (2.0, 2.0)]);
        assert_eq!(n, 2);
    }

    #[test]
    fn singleton_at_threshold_is_kept() {
        let pts = [(33.0, 1.0), (34.0, 1.0)];
        let (kept, _) = apply_filter(&pts, DegreeAxis::X, &FitFilter::singleton_tail(33));
        assert_eq!(kept, vec![(33.0, 1.0)]);
    }

    #[test]
    fn insufficient_after_filtering() {
        let pts = [(1.0, 2.0), (2.0, 1.0)];
        assert_eq!(
            fit_loglog(&pts, DegreeAxis::X, &FitFilter::exclude_degree_one()),
            Err(FitError::InsufficientData { used: 1 })
        );
        assert_eq!(
            fit_loglog(&[], DegreeAxis::X, &FitFilter::none()),
            Err(FitError::InsufficientData { used: 0 })
        );
    }

    #[test]
    fn equal_x_is_degenerate() {
        let pts = [(3.0, 1.0), (3.0, 5.0)];
        assert_eq!(
            fit_loglog(&pts, DegreeAxis::X, &FitFilter::none()),
            Err(FitError::DegenerateX)
        );
    }

    #[test]
    fn domain_error_names_point() {
        let pts = [(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)];
        assert_eq!(
            fit_loglog(&pts, DegreeAxis::X, &FitFilter::none()),
            Err(FitError::Domain {
                index: 1,
                x: 2.0,
                y: 0.0
            })
        );
        assert!(matches!(
            fit_loglog(&[(-1.0, 1.0), (2.0, 1.0)], DegreeAxis::X, &FitFilter::none()),
            Err(FitError::Domain { index: 0, .. })
        ));
    }

    #[test]
    fn flat_y_has_zero_slope_and_correlation() {
        let fit = fit_loglog(&[(1.0, 5.0), (2.0, 5.0), (3.0, 5.0)], DegreeAxis::X, &FitFilter::none())
            .unwrap();
        assert_eq!(fit.slope, 0.0);
        assert_eq!(fit.correlation, 0.0);
    }

    #[test]
    fn line_endpoints_span_used_points() {
        let pts = [(1.0, 10.0), (10.0, 1.0), (100.0, 0.1)];
        let fit = fit_loglog(&pts, DegreeAxis::X, &FitFilter::none()).unwrap();
        let [a, b] = fit.line_endpoints();
        assert!((a.0 - 0.0).abs() < 1e-12 && (a.1 - 1.0).abs() < 1e-12);
        assert!((b.0 - 2.0).abs() < 1e-12 && (b.1 + 1.0).abs() < 1e-12);
    }
}
