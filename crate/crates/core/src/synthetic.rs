//! Synthetic rank-degree data and the fitting experiments run on it.
//!
//! [`generate_rank_degree`] samples `d = C1 * r^R` at integer ranks and
//! discretizes to integer degrees. The two figure experiments fit the rank
//! plot (with and without degree-1 nodes) and the derived frequency plot
//! (with the singleton tail removed). [`error_propagation_experiment`]
//! compares how rank noise and frequency noise propagate into the fitted
//! exponents.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exponents::{freq_to_rank_exponent, ExponentError, FrequencyLaw, RankLaw};
use crate::fit::{fit_frequency_law, fit_loglog, fit_rank_law, DegreeAxis, FitError, FitFilter, PowerLawFit};
use crate::rankfreq::{frequency_from_ranks, FrequencyTable, RankTable};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SynthError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Fit(#[from] FitError),
    #[error(transparent)]
    Exponent(#[from] ExponentError),
    #[error("all {trials} trials were rejected")]
    AllTrialsRejected { trials: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rounding {
    /// Round half up.
    Nearest,
    Floor,
}

impl Rounding {
    fn apply(self, x: f64) -> f64 {
        match self {
            Rounding::Nearest => (x + 0.5).floor(),
            Rounding::Floor => x.floor(),
        }
    }
}

impl std::fmt::Display for Rounding {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Rounding::Nearest => "nearest",
            Rounding::Floor => "floor",
        })
    }
}

impl std::str::FromStr for Rounding {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "nearest" => Ok(Rounding::Nearest),
            "floor" => Ok(Rounding::Floor),
            other => Err(format!("unknown rounding {other:?} (expected nearest or floor)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SynthConfig {
    /// Number of ranks (nodes).
    pub n: usize,
    pub c1: f64,
    pub r: f64,
    pub rounding: Rounding,
}

impl SynthConfig {
    /// 2000 ranks, `R = -1`, nearest rounding, `C1 = n / 2`.
    ///
    /// `C1 = n / 2` puts the smallest continuous degree at exactly 0.5, which
    /// rounds up to 1, and reproduces the published figure slopes
    /// (-0.85, -0.97, -2.01) closely. The source never states `C1`.
    pub fn reference() -> Self {
        Self::with_default_c1(2000, -1.0, Rounding::Nearest)
    }

    pub fn with_default_c1(n: usize, r: f64, rounding: Rounding) -> Self {
        SynthConfig {
            n,
            c1: Self::default_c1(n),
            r,
            rounding,
        }
    }

    pub fn default_c1(n: usize) -> f64 {
        n as f64 / 2.0
    }

    pub fn validate(&self) -> Result<(), SynthError> {
        if self.n == 0 {
            return Err(SynthError::Config("n must be at least 1".into()));
        }
        if !(self.c1 > 0.0 && self.c1.is_finite()) {
            return Err(SynthError::Config(format!("C1 must be positive, got {}", self.c1)));
        }
        if !(self.r < 0.0 && self.r.is_finite()) {
            return Err(SynthError::Config(format!("R must be negative, got {}", self.r)));
        }
        let smallest = self.c1 * (self.n as f64).powf(self.r);
        if self.rounding == Rounding::Nearest && smallest < 0.5 {
            return Err(SynthError::Config(format!(
                "C1 * n^R = {smallest} is below 0.5; the smallest degrees would round to 0"
            )));
        }
        Ok(())
    }
}

/// `round(C1 * r^R)` for `r = 1..=n`, clamped to at least 1.
pub fn generate_rank_degree(cfg: &SynthConfig) -> Result<RankTable, SynthError> {
    cfg.validate()?;
    let degrees = (1..=cfg.n)
        .map(|rank| {
            let d = cfg.rounding.apply(cfg.c1 * (rank as f64).powf(cfg.r));
            d.max(1.0) as u64
        })
        .collect();
    Ok(RankTable::from_ranked_degrees(degrees).expect("monotone rounding of a decreasing law"))
}

/// Undiscretized `(rank, C1 * r^R)` points.
pub fn continuous_rank_points(cfg: &SynthConfig) -> Vec<(f64, f64)> {
    (1..=cfg.n)
        .map(|rank| {
            let r = rank as f64;
            (r, cfg.c1 * r.powf(cfg.r))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Figure1 {
    pub table: RankTable,
    pub fit_all: PowerLawFit,
    pub fit_excl_d1: PowerLawFit,
}

pub fn figure1_experiment(cfg: &SynthConfig) -> Result<Figure1, SynthError> {
    let table = generate_rank_degree(cfg)?;
    let fit_all = fit_rank_law(&table, &FitFilter::none())?;
    let fit_excl_d1 = fit_rank_law(&table, &FitFilter::exclude_degree_one())?;
    Ok(Figure1 {
        table,
        fit_all,
        fit_excl_d1,
    })
}

/// Figure-1 fits on the undiscretized law; both slopes equal `R`.
pub fn figure1_continuous(cfg: &SynthConfig) -> Result<(PowerLawFit, PowerLawFit), SynthError> {
    cfg.validate()?;
    let pts = continuous_rank_points(cfg);
    let all = fit_loglog(&pts, DegreeAxis::Y, &FitFilter::none())?;
    let excl = fit_loglog(&pts, DegreeAxis::Y, &FitFilter::exclude_degree_one())?;
    Ok((all, excl))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Figure2 {
    pub table: FrequencyTable,
    pub fit: PowerLawFit,
}

pub fn figure2_experiment(cfg: &SynthConfig, threshold: u64) -> Result<Figure2, SynthError> {
    if threshold == 0 {
        return Err(SynthError::Config("threshold must be at least 1".into()));
    }
    let ranks = generate_rank_degree(cfg)?;
    let table = frequency_from_ranks(&ranks);
    let fit = fit_frequency_law(&table, &FitFilter::singleton_tail(threshold))?;
    Ok(Figure2 { table, fit })
}

/// Parameters of the noise-propagation comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorSimConfig {
    /// Half-width of the uniform noise added to each rank value, in nodes.
    pub epsilon: f64,
    /// Half-width of the uniform noise added to each frequency value, in nodes.
    pub eta: f64,
    pub trials: usize,
    pub seed: u64,
    /// Number of consecutive degrees `1..=n` observed (and integrated over).
    pub n_degrees: usize,
    /// True rank exponent `R`.
    pub rank_exponent: f64,
    /// Network size per observed degree; the node count is
    /// `nodes_per_degree * n_degrees`.
    pub nodes_per_degree: f64,
}

impl Default for ErrorSimConfig {
    fn default() -> Self {
        ErrorSimConfig {
            epsilon: 0.5,
            eta: 0.5,
            trials: 200,
            seed: 42,
            n_degrees: 50,
            rank_exponent: -1.0,
            nodes_per_degree: 1.0e4,
        }
    }
}

impl ErrorSimConfig {
    pub fn validate(&self) -> Result<(), SynthError> {
        let bad = |msg: String| Err(SynthError::Config(msg));
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return bad(format!("epsilon must be finite and >= 0, got {}", self.epsilon));
        }
        if !(self.eta >= 0.0 && self.eta.is_finite()) {
            return bad(format!("eta must be finite and >= 0, got {}", self.eta));
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.n_degrees < 2 {
            return bad("n_degrees must be at least 2".into());
        }
        if !(self.rank_exponent < 0.0 && self.rank_exponent.is_finite()) {
            return bad(format!("rank exponent must be negative, got {}", self.rank_exponent));
        }
        if !(self.nodes_per_degree > 0.0 && self.nodes_per_degree.is_finite()) {
            return bad(format!(
                "nodes_per_degree must be positive, got {}",
                self.nodes_per_degree
            ));
        }
        Ok(())
    }

    /// The exact law pair the trials start from. `C1` is chosen so that the
    /// rank of the last degree-1 node is the node count.
    pub fn laws(&self) -> Result<(RankLaw, FrequencyLaw), SynthError> {
        let nodes = self.nodes_per_degree * self.n_degrees as f64;
        let rank = RankLaw::new(nodes.powf(-self.rank_exponent), self.rank_exponent)?;
        let freq = rank.to_frequency_law()?;
        Ok((rank, freq))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorSimReport {
    /// Mean of `|O_fit - O| / |O|` over accepted trials, where `O_fit` is fitted to
    /// frequencies differenced from noisy ranks.
    pub mean_abs_error_o_from_r: f64,
    /// Mean of `|R_fit - R| / |R|` over accepted trials, where `R_fit` is fitted to
    /// ranks integrated from noisy frequencies.
    pub mean_abs_error_r_from_o: f64,
    /// The same two errors with both noise scales set to zero.
    pub baseline_o_from_r: f64,
    pub baseline_r_from_o: f64,
    pub trials: usize,
    pub rejected_trials: usize,
}

impl ErrorSimReport {
    pub fn rank_path_wins(&self) -> bool {
        self.mean_abs_error_o_from_r < self.mean_abs_error_r_from_o
    }
}

/// Noise-free observations for both paths.
struct Observations {
    degrees: Vec<f64>,
    /// Path A: ranks at degrees `1..=n+1` whose successive differences are
    /// exactly `C2 * d^O`.
    ranks_a: Vec<f64>,
    /// Path B: frequencies at degrees `1..=n`, exact differences of
    /// `r(d) = (d / C1)^(1/R)`.
    freqs_b: Vec<f64>,
    /// Path B anchor, the rank of degree 1.
    rank_b_first: f64,
    o_true: f64,
    r_true: f64,
}

impl Observations {
    fn new(cfg: &ErrorSimConfig) -> Result<Self, SynthError> {
        let (rank_law, freq_law) = cfg.laws()?;
        let n = cfg.n_degrees;
        let degrees: Vec<f64> = (1..=n).map(|d| d as f64).collect();

        let mut ranks_a = vec![0.0; n + 1];
        ranks_a[n] = rank_law.rank_at((n + 1) as f64);
        for i in (0..n).rev() {
            ranks_a[i] = ranks_a[i + 1] + freq_law.frequency_at(degrees[i]);
        }

        let exact_ranks: Vec<f64> = (1..=n + 1).map(|d| rank_law.rank_at(d as f64)).collect();
        let freqs_b = exact_ranks.windows(2).map(|w| w[0] - w[1]).collect();

        Ok(Observations {
            degrees,
            ranks_a,
            freqs_b,
            rank_b_first: exact_ranks[0],
            o_true: freq_law.o,
            r_true: freq_to_rank_exponent(freq_law.o)?,
        })
    }

    /// One trial's pair of relative errors, or `None` when the noisy data
    /// leave the log domain.
    fn trial(&self, epsilon: f64, eta: f64, rng: &mut impl Rng) -> Option<(f64, f64)> {
        let noisy_ranks: Vec<f64> = self.ranks_a.iter().map(|&r| r + jitter(rng, epsilon)).collect();
        let freq_points: Vec<(f64, f64)> = self
            .degrees
            .iter()
            .zip(noisy_ranks.windows(2))
            .map(|(&d, w)| (d, w[0] - w[1]))
            .collect();

        let noisy_freqs: Vec<f64> = self.freqs_b.iter().map(|&f| f + jitter(rng, eta)).collect();
        let mut rank_points = Vec::with_capacity(self.degrees.len());
        let mut rank = self.rank_b_first;
        for (&d, &f) in self.degrees.iter().zip(&noisy_freqs) {
            rank_points.push((rank, d));
            rank -= f;
        }

        let o_fit = fit_loglog(&freq_points, DegreeAxis::X, &FitFilter::none()).ok()?;
        let r_fit = fit_loglog(&rank_points, DegreeAxis::Y, &FitFilter::none()).ok()?;
        let err_o = (o_fit.slope - self.o_true).abs() / self.o_true.abs();
        let err_r = (r_fit.slope - self.r_true).abs() / self.r_true.abs();
        (err_o.is_finite() && err_r.is_finite()).then_some((err_o, err_r))
    }
}

fn jitter(rng: &mut impl Rng, scale: f64) -> f64 {
    if scale == 0.0 {
        0.0
    } else {
        rng.random_range(-scale..=scale)
    }
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Runs both noise paths over `cfg.trials` independent trials.
///
/// Path A perturbs ranks by `U[-epsilon, epsilon]`, differences them into
/// frequencies and fits `O`. Path B perturbs frequencies by `U[-eta, eta]`,
/// re-integrates them from the degree-1 rank and fits `R`. A rank error
/// shows up once per frequency; a frequency error accumulates into every
/// later rank.
///
/// Each trial draws from its own ChaCha stream keyed by `(seed, trial)`, so
/// the report does not depend on thread scheduling.
pub fn error_propagation_experiment(cfg: &ErrorSimConfig) -> Result<ErrorSimReport, SynthError> {
    cfg.validate()?;
    let obs = Observations::new(cfg)?;

    let mut exact = trial_rng(cfg.seed, 0);
    let (baseline_o, baseline_r) = obs
        .trial(0.0, 0.0, &mut exact)
        .ok_or(SynthError::AllTrialsRejected { trials: 1 })?;

    let outcomes: Vec<Option<(f64, f64)>> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| obs.trial(cfg.epsilon, cfg.eta, &mut trial_rng(cfg.seed, t)))
        .collect();

    let accepted: Vec<(f64, f64)> = outcomes.into_iter().flatten().collect();
    if accepted.is_empty() {
        return Err(SynthError::AllTrialsRejected { trials: cfg.trials });
    }
    let k = accepted.len() as f64;
    let mean_o = accepted.iter().map(|e| e.0).sum::<f64>() / k;
    let mean_r = accepted.iter().map(|e| e.1).sum::<f64>() / k;

    Ok(ErrorSimReport {
        mean_abs_error_o_from_r: mean_o,
        mean_abs_error_r_from_o: mean_r,
        baseline_o_from_r: baseline_o,
        baseline_r_from_o: baseline_r,
        trials: cfg.trials,
        rejected_trials: cfg.trials - accepted.len(),
    })
}
