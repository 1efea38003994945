//! Numeric oracle against closed-form results.

use super::propagate::{numeric_sagnac, PropagationOptions};
use crate::absorption::absorption_coefficient;
use crate::model::{AtomSpecies, LoopGeometry, ProbeField};
use crate::phase::sagnac_phase_hybrid;
use crate::validity::{loop_validity, ValidityFlags, ValidityOptions};
use crate::Result;

pub const DEFAULT_PHASE_TOLERANCE: f64 = 1e-3;
pub const DEFAULT_ABSORPTION_TOLERANCE: f64 = 0.05;

/// Below this closed-form `kappa L` the absorption deviation is absolute.
const KAPPA_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompareOptions {
    pub propagation: PropagationOptions,
    pub validity: ValidityOptions,
    pub phase_tolerance: f64,
    pub absorption_tolerance: f64,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self {
            propagation: PropagationOptions::default(),
            validity: ValidityOptions::default(),
            phase_tolerance: DEFAULT_PHASE_TOLERANCE,
            absorption_tolerance: DEFAULT_ABSORPTION_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// A validity flag failed; deviations are reported but not judged.
    OutOfValidity,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::OutOfValidity => "skipped",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonReport {
    pub phase_numeric: f64,
    pub phase_closed_form: f64,
    pub phase_deviation: f64,
    /// `-ln |probe(L)/probe(0)|` of the `+Omega` run.
    pub kappa_l_numeric: f64,
    pub kappa_l_closed_form: f64,
    pub absorption_deviation: f64,
    pub numeric_error_estimate: f64,
    pub validity: ValidityFlags,
    pub verdict: Verdict,
}

fn deviation(numeric: f64, closed: f64, floor: f64) -> f64 {
    let diff = (numeric - closed).abs();
    if closed.abs() > floor {
        diff / closed.abs()
    } else {
        diff
    }
}

pub fn compare_to_analytic(
    geometry: &LoopGeometry,
    omega: f64,
    probe: &ProbeField,
    species: &AtomSpecies,
    options: &CompareOptions,
) -> Result<ComparisonReport> {
    let validity = loop_validity(geometry, probe, species, omega, &options.validity)?;
    let phase_closed_form = sagnac_phase_hybrid(geometry, omega, probe, species)?;
    let mut kappa_l_closed_form = 0.0;
    for seg in geometry.segments() {
        kappa_l_closed_form +=
            absorption_coefficient(seg, probe, species, options.validity.absorption)?;
    }

    let numeric = numeric_sagnac(geometry, omega, probe, species, &options.propagation)?;
    let kappa_l_numeric = -numeric.forward.log_amplitude;
    let phase_deviation = deviation(numeric.phase, phase_closed_form, 0.0);
    let absorption_deviation = deviation(kappa_l_numeric, kappa_l_closed_form, KAPPA_FLOOR);

    let verdict = if !validity.all_pass() {
        Verdict::OutOfValidity
    } else if phase_deviation <= options.phase_tolerance
        && absorption_deviation <= options.absorption_tolerance
    {
        Verdict::Pass
    } else {
        Verdict::Fail
    };

    Ok(ComparisonReport {
        phase_numeric: numeric.phase,
        phase_closed_form,
        phase_deviation,
        kappa_l_numeric,
        kappa_l_closed_form,
        absorption_deviation,
        numeric_error_estimate: numeric.error_estimate(),
        validity,
        verdict,
    })
}
