//! Analysis report and its text, CSV and JSON renderings.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use topolaw::{freq_to_rank_exponent, rank_to_freq_exponent, relative_error, FitFilter, PowerLawFit};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitSummary {
    pub slope: f64,
    pub intercept: f64,
    pub correlation: f64,
    pub points_used: usize,
    pub points_discarded: usize,
}

impl From<&PowerLawFit> for FitSummary {
    fn from(fit: &PowerLawFit) -> Self {
        FitSummary {
            slope: fit.slope,
            intercept: fit.intercept,
            correlation: fit.correlation,
            points_used: fit.points_used,
            points_discarded: fit.points_discarded,
        }
    }
}

/// An exponent converted from the other law's fit, compared with the direct fit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Conversion {
    pub value: f64,
    /// Relative to the directly fitted exponent; absent when that exponent is 0.
    pub relative_error: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FilterSettings {
    pub exclude_degree_one: bool,
    pub singleton_tail_threshold: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub dataset: String,
    pub nodes: usize,
    pub edges: usize,
    pub dropped_duplicates: usize,
    pub dropped_self_loops: usize,
    pub filter: FilterSettings,
    /// Degree against rank; the slope is `R`.
    pub rank_fit: FitSummary,
    /// Frequency against degree; the slope is `O`.
    pub frequency_fit: FitSummary,
    /// `O` computed from the fitted `R`; absent when `R = 0`.
    pub o_from_r: Option<Conversion>,
    /// `R` computed from the fitted `O`; absent when `O = -1`.
    pub r_from_o: Option<Conversion>,
}

impl AnalysisReport {
    /// Fills in both conversions from the two fits.
    pub fn new(
        dataset: String,
        nodes: usize,
        edges: usize,
        dropped: topolaw::DropCounts,
        rank_filter: &FitFilter,
        frequency_filter: &FitFilter,
        rank_fit: &PowerLawFit,
        frequency_fit: &PowerLawFit,
    ) -> Self {
        let convert = |calc: Option<f64>, measured: f64| {
            calc.map(|value| Conversion {
                value,
                relative_error: relative_error(measured, value).ok(),
            })
        };
        let o_from_r = convert(rank_to_freq_exponent(rank_fit.slope).ok(), frequency_fit.slope);
        let r_from_o = convert(freq_to_rank_exponent(frequency_fit.slope).ok(), rank_fit.slope);
        AnalysisReport {
            dataset,
            nodes,
            edges,
            dropped_duplicates: dropped.duplicates,
            dropped_self_loops: dropped.self_loops,
            filter: FilterSettings {
                exclude_degree_one: rank_filter.exclude_degree_one,
                singleton_tail_threshold: frequency_filter.singleton_tail_threshold,
            },
            rank_fit: rank_fit.into(),
            frequency_fit: frequency_fit.into(),
            o_from_r,
            r_from_o,
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let threshold = match self.filter.singleton_tail_threshold {
            Some(k) => k.to_string(),
            None => "none".into(),
        };
        let _ = writeln!(s, "dataset: {}", self.dataset);
        let _ = writeln!(s, "nodes: {}", self.nodes);
        let _ = writeln!(s, "edges: {}", self.edges);
        let _ = writeln!(
            s,
            "dropped lines: {} duplicate, {} self-loop",
            self.dropped_duplicates, self.dropped_self_loops
        );
        let _ = writeln!(
            s,
            "filter: exclude degree 1 = {}, singleton tail threshold = {}",
            self.filter.exclude_degree_one, threshold
        );
        write_fit(&mut s, "rank law (degree vs rank), R", &self.rank_fit);
        write_fit(&mut s, "frequency law (frequency vs degree), O", &self.frequency_fit);
        write_conversion(&mut s, "O from R", self.o_from_r);
        write_conversion(&mut s, "R from O", self.r_from_o);
        s
    }

    pub fn to_record(&self) -> AnalysisRecord {
        AnalysisRecord {
            dataset: self.dataset.clone(),
            nodes: self.nodes,
            edges: self.edges,
            dropped_duplicates: self.dropped_duplicates,
            dropped_self_loops: self.dropped_self_loops,
            exclude_degree_one: self.filter.exclude_degree_one,
            singleton_tail_threshold: self.filter.singleton_tail_threshold,
            rank_slope: self.rank_fit.slope,
            rank_intercept: self.rank_fit.intercept,
            rank_correlation: self.rank_fit.correlation,
            rank_points_used: self.rank_fit.points_used,
            rank_points_discarded: self.rank_fit.points_discarded,
            frequency_slope: self.frequency_fit.slope,
            frequency_intercept: self.frequency_fit.intercept,
            frequency_correlation: self.frequency_fit.correlation,
            frequency_points_used: self.frequency_fit.points_used,
            frequency_points_discarded: self.frequency_fit.points_discarded,
            o_from_r: self.o_from_r.map(|c| c.value),
            o_from_r_relative_error: self.o_from_r.and_then(|c| c.relative_error),
            r_from_o: self.r_from_o.map(|c| c.value),
            r_from_o_relative_error: self.r_from_o.and_then(|c| c.relative_error),
        }
    }

    /// Header row plus one data row.
    pub fn to_csv(&self) -> Result<String, csv::Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.serialize(self.to_record())?;
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn write_fit(s: &mut String, name: &str, fit: &FitSummary) {
    let _ = writeln!(
        s,
        "{name} = {:.4}, intercept = {:.4}, correlation = {:.4}, points used = {}, discarded = {}",
        fit.slope, fit.intercept, fit.correlation, fit.points_used, fit.points_discarded
    );
}

fn write_conversion(s: &mut String, name: &str, conv: Option<Conversion>) {
    match conv {
        Some(Conversion {
            value,
            relative_error: Some(e),
        }) => {
            let _ = writeln!(s, "{name} = {value:.4} (relative error vs fit {:.2}%)", e * 100.0);
        }
        Some(Conversion { value, .. }) => {
            let _ = writeln!(s, "{name} = {value:.4}");
        }
        None => {
            let _ = writeln!(s, "{name} = undefined (singular exponent)");
        }
    }
}

/// Flat CSV row of an [`AnalysisReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisRecord {
    pub dataset: String,
    pub nodes: usize,
    pub edges: usize,
    pub dropped_duplicates: usize,
    pub dropped_self_loops: usize,
    pub exclude_degree_one: bool,
    pub singleton_tail_threshold: Option<u64>,
    pub rank_slope: f64,
    pub rank_intercept: f64,
    pub rank_correlation: f64,
    pub rank_points_used: usize,
    pub rank_points_discarded: usize,
    pub frequency_slope: f64,
    pub frequency_intercept: f64,
    pub frequency_correlation: f64,
    pub frequency_points_used: usize,
    pub frequency_points_discarded: usize,
    pub o_from_r: Option<f64>,
    pub o_from_r_relative_error: Option<f64>,
    pub r_from_o: Option<f64>,
    pub r_from_o_relative_error: Option<f64>,
}

/// Writes `<stem>_points.tsv` (one log10 row per table entry) and
/// `<stem>_fit.tsv` (the two fitted-line endpoints).
pub fn write_plot_files(
    dir: &Path,
    stem: &str,
    points: &[(f64, f64)],
    fits: &[(&str, &PowerLawFit)],
) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let mut body = String::new();
    for &(x, y) in points {
        let _ = writeln!(body, "{:.6}\t{:.6}", x.log10(), y.log10());
    }
    fs::write(dir.join(format!("{stem}_points.tsv")), body)?;
    for (suffix, fit) in fits {
        let mut line = String::new();
        for (x, y) in fit.line_endpoints() {
            let _ = writeln!(line, "{x:.6}\t{y:.6}");
        }
        fs::write(dir.join(format!("{stem}_{suffix}.tsv")), line)?;
    }
    Ok(())
}
