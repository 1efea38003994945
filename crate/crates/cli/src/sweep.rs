//! Table generation: one row per evaluation point.

use std::io::Write;

use rayon::prelude::*;

use sagnac_core::envelope::{
    compare_to_analytic, CompareOptions, ComparisonReport, PropagationOptions, Verdict,
};
use sagnac_core::report::{sagnac_report, SagnacReport};
use sagnac_core::validity::ValidityOptions;

use crate::config::{Point, RunConfig};

pub const BASE_COLUMNS: [&str; 8] = [
    "swept_var",
    "xi",
    "vgr_over_vrec",
    "phase_optical_rad",
    "phase_hybrid_rad",
    "enhancement",
    "kappa_L",
    "valid",
];

pub const ORACLE_COLUMNS: [&str; 6] = [
    "phase_numeric_rad",
    "kappa_L_numeric",
    "phase_deviation",
    "absorption_deviation",
    "numeric_error_estimate",
    "oracle_verdict",
];

/// Relative slack on the enhancement range check.
const RANGE_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum OracleOutcome {
    Compared(ComparisonReport),
    /// The propagation itself failed.
    Error(String),
}

impl OracleOutcome {
    pub fn verdict(&self) -> &'static str {
        match self {
            OracleOutcome::Compared(c) => c.verdict.as_str(),
            OracleOutcome::Error(_) => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub swept: f64,
    pub temperature_ratio: Option<f64>,
    /// `xi` and `v_gr / v_rec` of the first medium segment; NaN for vacuum.
    pub xi: f64,
    pub vgr_over_vrec: f64,
    pub report: SagnacReport,
    pub oracle: Option<OracleOutcome>,
}

impl SweepRow {
    /// Passes unless the oracle ran on a row inside the validity region and
    /// missed a tolerance or failed outright.
    pub fn oracle_ok(&self) -> bool {
        match &self.oracle {
            None => true,
            Some(OracleOutcome::Compared(c)) => c.verdict != Verdict::Fail,
            Some(OracleOutcome::Error(_)) => !self.report.validity.all_pass(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error(transparent)]
    Config(#[from] crate::config::ConfigError),
    #[error("closed-form evaluation at {point}: {source}")]
    Model {
        point: String,
        source: sagnac_core::Error,
    },
    #[error("row {point} violates {what}")]
    Invariant { point: String, what: String },
}

fn describe(point: Point) -> String {
    match (point.swept, point.temperature_ratio) {
        (Some(v), Some(t)) => format!("swept = {v:e}, T/T_rec = {t:e}"),
        (Some(v), None) => format!("swept = {v:e}"),
        _ => "configured point".into(),
    }
}

pub fn validity_options(config: &RunConfig) -> ValidityOptions {
    ValidityOptions {
        epsilon: config.epsilon,
        absorption: config.absorption,
    }
}

pub fn compare_options(config: &RunConfig) -> CompareOptions {
    CompareOptions {
        propagation: PropagationOptions {
            quadrature_order: config.quadrature_order,
            relative_tolerance: config.tolerance,
            ..PropagationOptions::default()
        },
        validity: validity_options(config),
        ..CompareOptions::default()
    }
}

pub fn evaluate(config: &RunConfig, point: Point, oracle: bool) -> Result<SweepRow, SweepError> {
    let at = || describe(point);
    let geometry = config.geometry_at(point)?;
    let model = |source| SweepError::Model { point: at(), source };
    let validity = validity_options(config);
    let report = sagnac_report(&geometry, config.omega, &config.probe, &config.species, &validity)
        .map_err(model)?;

    let first = geometry
        .segments()
        .iter()
        .find_map(|s| s.derive(&config.species, &config.probe));
    let (xi, vgr_over_vrec) = first.map_or((f64::NAN, f64::NAN), |d| (d.xi, d.v_gr / d.v_rec));

    let s = config.matter_light_ratio();
    let invariant = |what: String| SweepError::Invariant { point: at(), what };
    if let Some(e) = report.enhancement {
        if !(e >= 1.0 - RANGE_SLACK && e <= s * (1.0 + RANGE_SLACK)) {
            return Err(invariant(format!("1 <= enhancement <= S (enhancement = {e:e}, S = {s:e})")));
        }
    }
    if !(report.phase_hybrid.is_finite() && report.phase_optical.is_finite()) {
        return Err(invariant("finite phases".into()));
    }
    if !(report.kappa_l_total >= 0.0) {
        return Err(invariant(format!("kappa L >= 0 (kappa L = {:e})", report.kappa_l_total)));
    }

    let oracle = oracle.then(|| {
        match compare_to_analytic(&geometry, config.omega, &config.probe, &config.species, &compare_options(config)) {
            Ok(c) => OracleOutcome::Compared(c),
            Err(e) => OracleOutcome::Error(e.to_string()),
        }
    });

    Ok(SweepRow {
        swept: point.swept.unwrap_or(xi),
        temperature_ratio: point.temperature_ratio,
        xi,
        vgr_over_vrec,
        report,
        oracle,
    })
}

/// Rows in point order; points are evaluated in parallel.
pub fn run(config: &RunConfig, oracle: bool) -> Result<Vec<SweepRow>, SweepError> {
    config
        .points()
        .into_par_iter()
        .map(|p| evaluate(config, p, oracle))
        .collect()
}

fn num(x: f64) -> String {
    format!("{x:.8e}")
}

pub fn header(oracle: bool, temperatures: bool) -> Vec<&'static str> {
    let mut h: Vec<&str> = BASE_COLUMNS.to_vec();
    if oracle {
        h.extend(ORACLE_COLUMNS);
    }
    if temperatures {
        h.push("temperature_ratio");
    }
    h
}

pub fn record(row: &SweepRow, oracle: bool, temperatures: bool) -> Vec<String> {
    let r = &row.report;
    let mut out = vec![
        num(row.swept),
        num(row.xi),
        num(row.vgr_over_vrec),
        num(r.phase_optical),
        num(r.phase_hybrid),
        num(r.enhancement.unwrap_or(f64::NAN)),
        num(r.kappa_l_total),
        r.validity.all_pass().to_string(),
    ];
    if oracle {
        match &row.oracle {
            Some(OracleOutcome::Compared(c)) => out.extend([
                num(c.phase_numeric),
                num(c.kappa_l_numeric),
                num(c.phase_deviation),
                num(c.absorption_deviation),
                num(c.numeric_error_estimate),
                c.verdict.as_str().to_string(),
            ]),
            other => {
                out.extend((0..5).map(|_| num(f64::NAN)));
                out.push(other.as_ref().map_or("", |o| o.verdict()).to_string());
            }
        }
    }
    if temperatures {
        out.push(num(row.temperature_ratio.unwrap_or(f64::NAN)));
    }
    out
}

pub fn write_csv<W: Write>(
    out: W,
    rows: &[SweepRow],
    oracle: bool,
    temperatures: bool,
) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header(oracle, temperatures))?;
    for row in rows {
        w.write_record(record(row, oracle, temperatures))?;
    }
    w.flush()?;
    Ok(())
}
