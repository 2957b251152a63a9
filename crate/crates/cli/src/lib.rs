//! `topolaw` command-line front end.
//!
//! Every subcommand writes to caller-supplied streams and returns a process
//! exit code, so the binary is a thin wrapper around [`run`].
//!
//! Exit codes: 0 success, 1 input read/parse failure, 2 not enough data to
//! fit, 3 invalid configuration or exponent domain.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;
use topolaw::{
    degree_sequence, error_propagation_experiment, figure1_experiment, figure2_experiment,
    fit_frequency_law, fit_rank_law, freq_to_rank_constant, freq_to_rank_exponent,
    frequency_points, frequency_table, parse_edge_list, rank_points, rank_table,
    rank_to_freq_constant, rank_to_freq_exponent, reproduce_tables, ErrorSimConfig, ExponentError,
    FitError, FitFilter, FrequencyLaw, IngestError, PowerLawFit, RankLaw, Rounding, SynthConfig, SynthError,
    TableError, TableRow,
};

pub mod report;

pub use report::{AnalysisRecord, AnalysisReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Input { path: String, source: IngestError },
    #[error("{0}")]
    Io(#[from] io::Error),
    #[error("insufficient data: {0}")]
    Fit(#[from] FitError),
    #[error("insufficient data: {0}")]
    Table(#[from] TableError),
    #[error("{0}")]
    Exponent(#[from] ExponentError),
    #[error("{0}")]
    Config(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input { .. } | CliError::Io(_) => 1,
            CliError::Fit(_) | CliError::Table(_) => 2,
            CliError::Exponent(_) | CliError::Config(_) => 3,
        }
    }
}

impl From<SynthError> for CliError {
    fn from(e: SynthError) -> Self {
        match e {
            SynthError::Fit(f) => CliError::Fit(f),
            SynthError::Exponent(x) => CliError::Exponent(x),
            other => CliError::Config(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "topolaw", version, about = "Power-law analysis of network degree data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit both degree power laws to an edge-list file.
    Analyze(AnalyzeArgs),
    /// Convert an exponent (and optionally its constant) to the other law.
    Convert(ConvertArgs),
    /// Recompute the measured-vs-calculated exponent tables.
    Tables,
    /// Fit discretized synthetic rank-degree data.
    Synth(SynthArgs),
    /// Compare rank-noise and frequency-noise propagation.
    Errorsim(ErrorsimArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, clap::Args)]
pub struct AnalyzeArgs {
    pub path: PathBuf,
    /// Drop degree-1 points from both fits.
    #[arg(long = "exclude-d1")]
    pub exclude_d1: bool,
    /// Drop frequency-1 points with degree above K from the frequency fit.
    #[arg(long, value_name = "K", value_parser = clap::value_parser!(u64).range(1..))]
    pub threshold: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Directory for log10 point and fitted-line TSV files.
    #[arg(long = "plot-data", value_name = "DIR")]
    pub plot_data: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
#[command(allow_negative_numbers = true)]
pub struct ConvertArgs {
    /// Rank exponent.
    #[arg(long = "R", value_name = "x", required_unless_present = "o", conflicts_with = "o")]
    pub r: Option<f64>,
    /// Out-degree exponent.
    #[arg(long = "O", value_name = "x")]
    pub o: Option<f64>,
    /// Rank-law constant (with --R).
    #[arg(long = "C1", value_name = "y", requires = "r", conflicts_with = "c2")]
    pub c1: Option<f64>,
    /// Frequency-law constant (with --O).
    #[arg(long = "C2", value_name = "y", requires = "o", conflicts_with = "r")]
    pub c2: Option<f64>,
}

#[derive(Debug, clap::Args)]
#[command(allow_negative_numbers = true)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 2000)]
    pub n: usize,
    /// Rank-law constant; defaults to n/2.
    #[arg(long)]
    pub c1: Option<f64>,
    #[arg(long, default_value_t = -1.0)]
    pub r: f64,
    #[arg(long, default_value = "nearest")]
    pub rounding: Rounding,
    #[arg(long, default_value_t = 33)]
    pub threshold: u64,
    #[arg(long = "plot-data", value_name = "DIR")]
    pub plot_data: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
pub struct ErrorsimArgs {
    #[arg(long, default_value_t = 0.5)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 0.5)]
    pub eta: f64,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 50)]
    pub ndegrees: usize,
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    3
                }
            };
        }
    };

    let result = match cli.command {
        Command::Analyze(a) => cmd_analyze(&a).and_then(|text| emit(out, &text)),
        Command::Convert(a) => cmd_convert(&a).and_then(|text| emit(out, &text)),
        Command::Tables => emit(out, &cmd_tables()),
        Command::Synth(a) => cmd_synth(&a).and_then(|text| emit(out, &text)),
        Command::Errorsim(a) => cmd_errorsim(&a).and_then(|text| emit(out, &text)),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())?;
    Ok(())
}

/// Runs the full edge list to cross-converted fits pipeline.
pub fn analyze(path: &Path, exclude_d1: bool, threshold: Option<u64>) -> Result<AnalysisReport, CliError> {
    Ok(run_analysis(path, exclude_d1, threshold)?.report)
}

struct Analysis {
    report: AnalysisReport,
    rank_points: Vec<(f64, f64)>,
    frequency_points: Vec<(f64, f64)>,
    rank_fit: PowerLawFit,
    frequency_fit: PowerLawFit,
}

fn run_analysis(path: &Path, exclude_d1: bool, threshold: Option<u64>) -> Result<Analysis, CliError> {
    let input_err = |source| CliError::Input {
        path: path.display().to_string(),
        source,
    };
    let file = File::open(path).map_err(|e| input_err(IngestError::Io(e)))?;
    let parsed = parse_edge_list(BufReader::new(file)).map_err(input_err)?;
    let degrees = degree_sequence(&parsed.graph);
    let ranks = rank_table(&degrees)?;
    let freqs = frequency_table(&degrees)?;

    let rank_filter = FitFilter {
        exclude_degree_one: exclude_d1,
        singleton_tail_threshold: None,
    };
    let freq_filter = FitFilter {
        exclude_degree_one: exclude_d1,
        singleton_tail_threshold: threshold,
    };
    let rank_fit = fit_rank_law(&ranks, &rank_filter)?;
    let frequency_fit = fit_frequency_law(&freqs, &freq_filter)?;

    let dataset = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    let report = AnalysisReport::new(
        dataset,
        parsed.graph.node_count(),
        parsed.graph.edge_count(),
        parsed.dropped,
        &rank_filter,
        &freq_filter,
        &rank_fit,
        &frequency_fit,
    );
    Ok(Analysis {
        report,
        rank_points: rank_points(&ranks),
        frequency_points: frequency_points(&freqs),
        rank_fit,
        frequency_fit,
    })
}

pub fn cmd_analyze(args: &AnalyzeArgs) -> Result<String, CliError> {
    let a = run_analysis(&args.path, args.exclude_d1, args.threshold)?;
    if let Some(dir) = &args.plot_data {
        report::write_plot_files(dir, "rank", &a.rank_points, &[("fit", &a.rank_fit)])?;
        report::write_plot_files(dir, "frequency", &a.frequency_points, &[("fit", &a.frequency_fit)])?;
    }
    Ok(match args.format {
        Format::Text => a.report.to_text(),
        Format::Csv => a.report.to_csv().map_err(|e| CliError::Io(io::Error::other(e)))?,
        Format::Json => a.report.to_json() + "\n",
    })
}

pub fn cmd_convert(args: &ConvertArgs) -> Result<String, CliError> {
    match (args.r, args.o) {
        (Some(r), None) => {
            let o = rank_to_freq_exponent(r)?;
            Ok(match args.c1 {
                Some(c1) => {
                    let c2 = rank_to_freq_constant(&RankLaw::new(c1, r)?)?;
                    format!("O = {o:.4}, C2 = {c2:.4}\n")
                }
                None => format!("O = {o:.4}\n"),
            })
        }
        (None, Some(o)) => {
            let r = freq_to_rank_exponent(o)?;
            Ok(match args.c2 {
                Some(c2) => {
                    let c1 = freq_to_rank_constant(&FrequencyLaw::new(c2, o)?)?;
                    format!("R = {r:.4}, C1 = {c1:.4}\n")
                }
                None => format!("R = {r:.4}\n"),
            })
        }
        _ => Err(CliError::Config("give exactly one of --R or --O".into())),
    }
}

fn table_line(row: &TableRow) -> String {
    format!(
        "{}  {:.2}  {:.2}  {:.2}  {:.0}%",
        row.name,
        row.measured_source,
        row.measured_target,
        row.calculated_rounded,
        row.relative_error * 100.0
    )
}

pub fn cmd_tables() -> String {
    let tables = reproduce_tables();
    let mut s = String::new();
    let _ = writeln!(s, "Table 1: exponent O calculated from measured R (O = 1/R - 1)");
    let _ = writeln!(s, "dataset  measured R  measured O  calculated O  relative error");
    for row in &tables.o_from_r {
        let _ = writeln!(s, "{}", table_line(row));
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "Table 2: exponent R calculated from measured O (R = 1/(O + 1))");
    let _ = writeln!(s, "dataset  measured O  measured R  calculated R  relative error");
    for row in &tables.r_from_o {
        let _ = writeln!(s, "{}", table_line(row));
    }
    s
}

pub fn cmd_synth(args: &SynthArgs) -> Result<String, CliError> {
    let cfg = SynthConfig {
        n: args.n,
        c1: args.c1.unwrap_or_else(|| SynthConfig::default_c1(args.n)),
        r: args.r,
        rounding: args.rounding,
    };
    cfg.validate()?;
    let fig1 = figure1_experiment(&cfg)?;
    let fig2 = figure2_experiment(&cfg, args.threshold)?;

    if let Some(dir) = &args.plot_data {
        report::write_plot_files(
            dir,
            "figure1",
            &rank_points(&fig1.table),
            &[("fit_all", &fig1.fit_all), ("fit_excl_d1", &fig1.fit_excl_d1)],
        )?;
        report::write_plot_files(
            dir,
            "figure2",
            &frequency_points(&fig2.table),
            &[("fit", &fig2.fit)],
        )?;
    }

    let c1_note = if args.c1.is_none() { " (assumed: n/2)" } else { "" };
    let mut s = String::new();
    let _ = writeln!(
        s,
        "synthetic rank-degree data: n = {}, C1 = {:.4}{c1_note}, R = {:.4}, rounding = {}",
        cfg.n, cfg.c1, cfg.r, cfg.rounding
    );
    let line = |s: &mut String, name: &str, fit: &PowerLawFit| {
        let _ = writeln!(
            s,
            "{name}: slope = {:.4}, intercept = {:.4}, points used = {}, discarded = {}",
            fit.slope, fit.intercept, fit.points_used, fit.points_discarded
        );
    };
    line(&mut s, "rank plot, all points", &fig1.fit_all);
    line(&mut s, "rank plot, degree > 1", &fig1.fit_excl_d1);
    line(
        &mut s,
        &format!("frequency plot, singleton tail above {} removed", args.threshold),
        &fig2.fit,
    );
    let expected = rank_to_freq_exponent(cfg.r)?;
    let _ = writeln!(
        s,
        "frequency slope vs 1/R - 1 = {expected:.4}: difference {:.4}",
        fig2.fit.slope - expected
    );
    Ok(s)
}

pub fn cmd_errorsim(args: &ErrorsimArgs) -> Result<String, CliError> {
    let cfg = ErrorSimConfig {
        epsilon: args.epsilon,
        eta: args.eta,
        trials: args.trials,
        seed: args.seed,
        n_degrees: args.ndegrees,
        ..ErrorSimConfig::default()
    };
    let rep = error_propagation_experiment(&cfg)?;
    let (rank_law, freq_law) = cfg.laws()?;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "noise propagation: epsilon = {:.4}, eta = {:.4}, n_degrees = {}, trials = {}, seed = {}",
        cfg.epsilon, cfg.eta, cfg.n_degrees, cfg.trials, cfg.seed
    );
    let _ = writeln!(
        s,
        "true laws: R = {:.4}, C1 = {:.4}; O = {:.4}, C2 = {:.4}",
        rank_law.r, rank_law.c1, freq_law.o, freq_law.c2
    );
    let _ = writeln!(
        s,
        "rank path (O fitted to differenced noisy ranks): mean relative error = {:.4e} (noise-free {:.4e})",
        rep.mean_abs_error_o_from_r, rep.baseline_o_from_r
    );
    let _ = writeln!(
        s,
        "frequency path (R fitted to integrated noisy frequencies): mean relative error = {:.4e} (noise-free {:.4e})",
        rep.mean_abs_error_r_from_o, rep.baseline_r_from_o
    );
    let _ = writeln!(s, "rejected trials: {}", rep.rejected_trials);
    let winner = if rep.mean_abs_error_o_from_r < rep.mean_abs_error_r_from_o {
        "rank path"
    } else if rep.mean_abs_error_o_from_r > rep.mean_abs_error_r_from_o {
        "frequency path"
    } else {
        "tie"
    };
    let _ = writeln!(s, "smaller error: {winner}");
    Ok(s)
}
