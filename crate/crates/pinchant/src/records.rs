//! Result documents and CSV rows written by the command-line tool.

use pinchant_core::{Solution, SolverTolerances};
use serde::{Deserialize, Serialize};

/// Objective being optimized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Metric {
    /// Worst-user average SNR.
    AvgSnr,
    /// Worst-user SNR threshold met with per-user outage probabilities.
    Outage,
}

impl Metric {
    pub fn as_str(&self) -> &'static str {
        match self {
            Metric::AvgSnr => "avg-snr",
            Metric::Outage => "outage",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionDoc {
    pub t_star: f64,
    pub t_star_db: f64,
    pub x_star: f64,
    /// `[lo, hi]`, or null when empty.
    pub feasible: Option<[f64; 2]>,
    pub outer_iterations: usize,
    pub per_user_bounds: Vec<Option<f64>>,
}

impl From<&Solution> for SolutionDoc {
    fn from(s: &Solution) -> Self {
        Self {
            t_star: s.t_star,
            t_star_db: 10.0 * s.t_star.log10(),
            x_star: s.x_star,
            feasible: s.feasible.bounds().map(|(lo, hi)| [lo, hi]),
            outer_iterations: s.outer_iterations,
            per_user_bounds: s
                .per_user_bounds
                .iter()
                .map(|&v| v.is_finite().then_some(v))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceDoc {
    pub eps_t: f64,
    pub eps_y: f64,
    pub eps_u: f64,
    pub max_iter: usize,
}

impl From<&SolverTolerances> for ToleranceDoc {
    fn from(t: &SolverTolerances) -> Self {
        Self {
            eps_t: t.eps_t,
            eps_y: t.eps_y,
            eps_u: t.eps_u,
            max_iter: t.max_iter,
        }
    }
}

/// Output of `solve` and `closed-form`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub schema: u32,
    pub scenario: String,
    pub metric: Metric,
    pub method: String,
    pub users: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilons: Option<Vec<f64>>,
    pub tolerances: ToleranceDoc,
    pub pinching: SolutionDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixed: Option<SolutionDoc>,
    /// `(t_pin - t_fix) / t_pin`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap: Option<f64>,
}

impl SolveReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn relative_gap(t_pin: f64, t_fix: f64) -> f64 {
    (t_pin - t_fix) / t_pin
}

/// One sweep grid point. Column order is part of the file format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub scenario_id: String,
    pub metric: Metric,
    pub axis1: String,
    pub value1: f64,
    pub axis2: Option<String>,
    pub value2: Option<f64>,
    pub drops: usize,
    pub t_star: f64,
    pub x_star: f64,
    pub baseline_t_star: f64,
    pub gap: f64,
    pub iterations: f64,
    pub wall_time_s: f64,
}

pub const RESULT_COLUMNS: [&str; 13] = [
    "scenario_id",
    "metric",
    "axis1",
    "value1",
    "axis2",
    "value2",
    "drops",
    "t_star",
    "x_star",
    "baseline_t_star",
    "gap",
    "iterations",
    "wall_time_s",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CcdfRow {
    pub t: f64,
    pub analytic: f64,
    pub mc: f64,
    pub mc_std_error: f64,
}

pub const CCDF_COLUMNS: [&str; 4] = ["t", "analytic", "mc", "mc_std_error"];

/// Serializes rows with a header line, LF line endings.
pub fn write_csv<T: Serialize>(rows: &[T], header: &[&str]) -> Result<String, csv::Error> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .has_headers(false)
        .from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
