//! Conversions between the rank law and the frequency law.
//!
//! Writing the rank law as `r = (d / C1)^(1/R)` and differentiating with
//! respect to degree gives a frequency law with
//!
//! ```text
//! O  = 1/R - 1              C2 = -(1/R) * (1/C1)^(1/R)
//! ```
//!
//! and integrating the frequency law back over degree gives the inverse
//! pair
//!
//! ```text
//! R  = 1/(O + 1)            C1 = ((-O - 1) / C2)^R
//! ```
//!
//! Both directions are first-order approximations on discrete data; the
//! `synthetic` module measures how far they drift.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExponentError {
    #[error("rank exponent R = 0 has no frequency-law counterpart")]
    SingularRank,
    #[error("out-degree exponent O = -1 has no rank-law counterpart")]
    SingularFrequency,
    #[error("converted constant {value} is not positive")]
    SignDomain { value: f64 },
    #[error("constant must be positive and finite, got {value}")]
    InvalidConstant { value: f64 },
    #[error("relative error is undefined for a measured value of 0")]
    ZeroMeasured,
    #[error("rank integral needs d > 1, got {d}")]
    DegreeDomain { d: f64 },
}

/// `d = C1 * r^R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RankLaw {
    pub c1: f64,
    pub r: f64,
}

impl RankLaw {
    pub fn new(c1: f64, r: f64) -> Result<Self, ExponentError> {
        if !(c1 > 0.0 && c1.is_finite()) {
            return Err(ExponentError::InvalidConstant { value: c1 });
        }
        Ok(RankLaw { c1, r })
    }

    pub fn degree_at(&self, rank: f64) -> f64 {
        self.c1 * rank.powf(self.r)
    }

    /// Inverse form, `r = (d / C1)^(1/R)`.
    pub fn rank_at(&self, degree: f64) -> f64 {
        (degree / self.c1).powf(1.0 / self.r)
    }

    pub fn to_frequency_law(&self) -> Result<FrequencyLaw, ExponentError> {
        Ok(FrequencyLaw {
            c2: rank_to_freq_constant(self)?,
            o: rank_to_freq_exponent(self.r)?,
        })
    }
}

/// `f_d = C2 * d^O`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrequencyLaw {
    pub c2: f64,
    pub o: f64,
}

impl FrequencyLaw {
    pub fn new(c2: f64, o: f64) -> Result<Self, ExponentError> {
        if !(c2 > 0.0 && c2.is_finite()) {
            return Err(ExponentError::InvalidConstant { value: c2 });
        }
        Ok(FrequencyLaw { c2, o })
    }

    pub fn frequency_at(&self, degree: f64) -> f64 {
        self.c2 * degree.powf(self.o)
    }

    pub fn to_rank_law(&self) -> Result<RankLaw, ExponentError> {
        Ok(RankLaw {
            c1: freq_to_rank_constant(self)?,
            r: freq_to_rank_exponent(self.o)?,
        })
    }
}

pub fn rank_to_freq_exponent(r: f64) -> Result<f64, ExponentError> {
    if r == 0.0 {
        return Err(ExponentError::SingularRank);
    }
    Ok(1.0 / r - 1.0)
}

pub fn freq_to_rank_exponent(o: f64) -> Result<f64, ExponentError> {
    if o == -1.0 {
        return Err(ExponentError::SingularFrequency);
    }
    Ok(1.0 / (o + 1.0))
}

pub fn rank_to_freq_constant(law: &RankLaw) -> Result<f64, ExponentError> {
    if law.r == 0.0 {
        return Err(ExponentError::SingularRank);
    }
    let inv = 1.0 / law.r;
    let c2 = -inv * (1.0 / law.c1).powf(inv);
    if !(c2 > 0.0 && c2.is_finite()) {
        return Err(ExponentError::SignDomain { value: c2 });
    }
    Ok(c2)
}

pub fn freq_to_rank_constant(law: &FrequencyLaw) -> Result<f64, ExponentError> {
    let r = freq_to_rank_exponent(law.o)?;
    let base = (-law.o - 1.0) / law.c2;
    if !(base > 0.0) {
        return Err(ExponentError::SignDomain { value: base });
    }
    let c1 = base.powf(r);
    if !(c1 > 0.0 && c1.is_finite()) {
        return Err(ExponentError::SignDomain { value: c1 });
    }
    Ok(c1)
}

/// `|calculated - measured| / |measured|`.
pub fn relative_error(measured: f64, calculated: f64) -> Result<f64, ExponentError> {
    if measured == 0.0 {
        return Err(ExponentError::ZeroMeasured);
    }
    Ok((calculated - measured).abs() / measured.abs())
}

/// Published exponents for one measured topology snapshot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PublishedDatasetRow {
    pub name: &'static str,
    pub measured_r: f64,
    pub measured_o: f64,
}

pub const PUBLISHED_DATASETS: [PublishedDatasetRow; 4] = [
    PublishedDatasetRow { name: "Int-11-97", measured_r: -0.81, measured_o: -2.15 },
    PublishedDatasetRow { name: "Int-04-98", measured_r: -0.82, measured_o: -2.16 },
    PublishedDatasetRow { name: "Int-12-98", measured_r: -0.74, measured_o: -2.20 },
    PublishedDatasetRow { name: "Rout-95", measured_r: -0.48, measured_o: -2.48 },
];

/// One row of a measured-vs-calculated comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub name: &'static str,
    /// The measured exponent the conversion starts from.
    pub measured_source: f64,
    /// The measured exponent the conversion is compared against.
    pub measured_target: f64,
    pub calculated: f64,
    /// `calculated` rounded to 2 decimals, as tabulated.
    pub calculated_rounded: f64,
    /// Relative error of the tabulated value against `measured_target`.
    pub relative_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExponentTables {
    /// `O` calculated from measured `R`.
    pub o_from_r: Vec<TableRow>,
    /// `R` calculated from measured `O`.
    pub r_from_o: Vec<TableRow>,
}

fn round2(x: f64) -> f64 {
    (x * 100.0).round() / 100.0
}

fn table_row(
    name: &'static str,
    source: f64,
    target: f64,
    convert: fn(f64) -> Result<f64, ExponentError>,
) -> TableRow {
    // Embedded values are far from both singularities.
    let calculated = convert(source).expect("embedded exponent is regular");
    let calculated_rounded = round2(calculated);
    let relative_error =
        relative_error(target, calculated_rounded).expect("embedded exponent is nonzero");
    TableRow {
        name,
        measured_source: source,
        measured_target: target,
        calculated,
        calculated_rounded,
        relative_error,
    }
}

/// Recomputes the calculated columns for the embedded datasets.
pub fn reproduce_tables() -> ExponentTables {
    let o_from_r = PUBLISHED_DATASETS
        .iter()
        .map(|row| table_row(row.name, row.measured_r, row.measured_o, rank_to_freq_exponent))
        .collect();
    let r_from_o = PUBLISHED_DATASETS
        .iter()
        .map(|row| table_row(row.name, row.measured_o, row.measured_r, freq_to_rank_exponent))
        .collect();
    ExponentTables { o_from_r, r_from_o }
}

/// Degree density `rho(s) = C2 * s^(O - 1)`.
///
/// With a unit-width degree bin (`2 * dd = 1`), `rho(d) * d` reproduces the
/// frequency law exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityLaw {
    pub c2: f64,
    pub o: f64,
}

impl DensityLaw {
    pub const HALF_WIDTH: f64 = 0.5;

    pub fn density(&self, s: f64) -> f64 {
        self.c2 * s.powf(self.o - 1.0)
    }

    /// `rho(d) * d`, the frequency implied by the density over one bin.
    pub fn frequency_at(&self, d: f64) -> f64 {
        self.density(d) * d
    }
}

pub fn density_law(law: &FrequencyLaw) -> DensityLaw {
    DensityLaw {
        c2: law.c2,
        o: law.o,
    }
}

/// `r(d) = integral from 1 to d of s * rho(s) ds = C2 * (d^(O+1) - 1) / (O + 1)`.
///
/// Note the direction: this grows with `d`, whereas rank falls with degree.
/// It counts nodes with degree between 1 and `d`; the decreasing-degree rank
/// of the last degree-`d` node is the total node count minus this (up to the
/// bin at `d`). The formula is kept in its stated form.
pub fn rank_integral(law: &DensityLaw, d: f64) -> Result<f64, ExponentError> {
    if !(d > 1.0) {
        return Err(ExponentError::DegreeDomain { d });
    }
    if law.o == -1.0 {
        return Err(ExponentError::SingularFrequency);
    }
    let k = law.o + 1.0;
    Ok(law.c2 * (d.powf(k) - 1.0) / k)
}
