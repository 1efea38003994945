//! Stationary probe propagation around the loop.
//!
//! The probe obeys `d/dz probe = K(z) probe`, where `K` comes from solving
//! the velocity-averaged coherences at each evaluation point. The
//! integration runs segment by segment with an adaptive Dormand–Prince
//! scheme, capped at `1 / steps_per_segment` of the segment length. The
//! working probe is renormalised after every step so that strong
//! absorption cannot underflow it.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::coherence::{local_dispersion, CoherenceOrder, MediumCoupling};
use super::integrator::{dopri5_step, next_step, Tolerance};
use super::velocity::VelocityGrid;
use crate::model::{AtomSpecies, LoopGeometry, ProbeField};
use crate::{Error, Result};

pub const DEFAULT_QUADRATURE_ORDER: usize = 64;
pub const DEFAULT_STEPS_PER_SEGMENT: usize = 512;
pub const DEFAULT_RELATIVE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationOptions {
    pub quadrature_order: usize,
    /// Lower bound on the number of steps per segment.
    pub steps_per_segment: usize,
    pub relative_tolerance: f64,
    pub coherence_order: CoherenceOrder,
}

impl Default for PropagationOptions {
    fn default() -> Self {
        Self {
            quadrature_order: DEFAULT_QUADRATURE_ORDER,
            steps_per_segment: DEFAULT_STEPS_PER_SEGMENT,
            relative_tolerance: DEFAULT_RELATIVE_TOLERANCE,
            coherence_order: CoherenceOrder::SelfConsistent,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropagationResult {
    pub z_grid: Vec<f64>,
    pub probe_trace: Vec<Complex64>,
    /// Unwrapped phase gained between entry and exit (rad).
    pub phase: f64,
    /// `ln |probe(L) / probe(0)|`.
    pub log_amplitude: f64,
    /// Accumulated bound on the error of `ln probe` (covers both the phase
    /// and the log-amplitude), including a per-step rounding allowance.
    pub error_estimate: f64,
}

pub fn propagate_probe(
    geometry: &LoopGeometry,
    omega: f64,
    probe_in: Complex64,
    probe: &ProbeField,
    species: &AtomSpecies,
    options: &PropagationOptions,
) -> Result<PropagationResult> {
    let amplitude = probe_in.norm();
    if !(amplitude > 0.0) || !amplitude.is_finite() {
        return Err(Error::InvalidParameter {
            name: "probe_in",
            value: amplitude,
            constraint: "nonzero and finite",
        });
    }
    let omega_r = omega * geometry.radius();
    let k_p = probe.wavenumber();
    let v_rec = species.recoil_velocity(probe);
    let tolerance = Tolerance {
        relative: options.relative_tolerance,
        absolute: options.relative_tolerance * 1e-12,
    };

    let mut z_grid = alloc::vec![0.0];
    let mut trace = alloc::vec![probe_in];
    // unit-modulus working copy; the modulus lives in `log_amplitude`
    let mut y = probe_in / amplitude;
    let mut phase = 0.0;
    let mut log_amplitude = 0.0;
    let mut error_estimate = 0.0;
    let mut z_start = 0.0;

    for (index, segment) in geometry.segments().iter().enumerate() {
        let coupling = MediumCoupling::of(segment, species, probe);
        let grid = match coupling {
            Some(_) => VelocityGrid::thermal(
                segment.temperature_ratio(),
                v_rec,
                options.quadrature_order,
            ),
            None => VelocityGrid::at_rest(),
        };
        let mut rhs = |z: f64, y: Complex64| -> Result<Complex64> {
            let k = local_dispersion(
                coupling.as_ref(),
                &grid,
                k_p,
                omega_r,
                options.coherence_order,
            )?
            .ok_or(Error::NonConvergence { segment: index, z })?;
            Ok(k * y)
        };

        let length = segment.length();
        let mut h_max = length / options.steps_per_segment.max(1) as f64;
        // keep |K h| <= 1 so that per-step phase increments stay below pi
        let k_entry = rhs(z_start, Complex64::new(1.0, 0.0))?.norm();
        if k_entry > 0.0 {
            h_max = h_max.min(1.0 / k_entry);
        }
        let h_min = length * 1e-13;
        let mut z = 0.0;
        let mut h = h_max;
        while z < length {
            let last = z + h >= length;
            let step_h = if last { length - z } else { h };
            let step = dopri5_step(&mut rhs, z_start + z, y, step_h)?;
            let err = tolerance.scaled_error(&step, y);
            if !err.is_finite() || err > 1.0 {
                h = next_step(step_h, if err.is_finite() { err } else { 1e10 });
                if h < h_min {
                    return Err(Error::NonConvergence {
                        segment: index,
                        z: z_start + z,
                    });
                }
                continue;
            }
            let ratio = step.y / y;
            let modulus = step.y.norm();
            phase += ratio.arg();
            log_amplitude += libm::log(ratio.norm());
            error_estimate += step.error.norm() / modulus + 4.0 * f64::EPSILON;
            y = step.y / modulus;
            z = if last { length } else { z + step_h };
            z_grid.push(z_start + z);
            trace.push(y * amplitude * libm::exp(log_amplitude));
            h = next_step(step_h, err).min(h_max);
        }
        z_start += length;
    }

    Ok(PropagationResult {
        z_grid,
        probe_trace: trace,
        phase,
        log_amplitude,
        error_estimate,
    })
}

/// Numeric Sagnac phase together with the runs it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericSagnac {
    /// Antisymmetric part `(phi(+Omega) - phi(-Omega)) / 2`.
    pub phase: f64,
    pub forward: PropagationResult,
    pub reversed: PropagationResult,
}

impl NumericSagnac {
    pub fn error_estimate(&self) -> f64 {
        0.5 * (self.forward.error_estimate + self.reversed.error_estimate)
    }
}

/// Propagates a unit probe at `+Omega` and `-Omega`. Phase terms that are
/// even in the rotation rate drop out of the antisymmetric part.
pub fn numeric_sagnac(
    geometry: &LoopGeometry,
    omega: f64,
    probe: &ProbeField,
    species: &AtomSpecies,
    options: &PropagationOptions,
) -> Result<NumericSagnac> {
    let one = Complex64::new(1.0, 0.0);
    let forward = propagate_probe(geometry, omega, one, probe, species, options)?;
    let reversed = propagate_probe(geometry, -omega, one, probe, species, options)?;
    Ok(NumericSagnac {
        phase: 0.5 * (forward.phase - reversed.phase),
        forward,
        reversed,
    })
}

pub fn sagnac_phase_numeric(
    geometry: &LoopGeometry,
    omega: f64,
    probe: &ProbeField,
    species: &AtomSpecies,
    options: &PropagationOptions,
) -> Result<f64> {
    numeric_sagnac(geometry, omega, probe, species, options).map(|n| n.phase)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{control_rabi_for_xi, ControlField, MediumSegment};
    use core::f64::consts::PI;

    fn probe() -> ProbeField {
        ProbeField::new(500e-9, 1e-6).unwrap()
    }

    #[test]
    fn vacuum_loop_phase() {
        let g = LoopGeometry::vacuum(0.1).unwrap();
        let omega = 7.29e-5;
        let r = propagate_probe(&g, omega, Complex64::new(1.0, 0.0), &probe(), &AtomSpecies::sodium_like(), &Default::default()).unwrap();
        let expected = 2.0 * PI / 500e-9 * (omega * 0.1 / crate::constants::C) * 2.0 * PI * 0.1;
        assert!((r.phase / expected - 1.0).abs() < 1e-12);
        assert!(r.log_amplitude.abs() <= r.error_estimate);
        assert_eq!(r.probe_trace[0], Complex64::new(1.0, 0.0));
        assert!(r.z_grid.len() > DEFAULT_STEPS_PER_SEGMENT);
    }

    #[test]
    fn zero_probe_rejected() {
        let g = LoopGeometry::vacuum(0.1).unwrap();
        assert!(propagate_probe(&g, 1e-5, Complex64::new(0.0, 0.0), &probe(), &AtomSpecies::sodium_like(), &Default::default()).is_err());
    }

    #[test]
    fn perfect_eit_is_lossless() {
        let s = AtomSpecies::sodium_like();
        let n = 1e17;
        let rabi = control_rabi_for_xi(3.0, n, &s, &probe()).unwrap();
        let ctl = ControlField::new(Complex64::new(rabi, 0.0), 1.0).unwrap();
        let seg = MediumSegment::new(1e-3, n, 6.1e7, ctl, 0.0).unwrap();
        let g = LoopGeometry::with_vacuum_filler(0.1, alloc::vec![seg]).unwrap();
        let r = propagate_probe(&g, 0.0, Complex64::new(1.0, 0.0), &probe(), &s, &Default::default()).unwrap();
        assert!(r.log_amplitude.abs() <= r.error_estimate + 1e-15);
        assert!(r.phase.abs() <= r.error_estimate + 1e-15);
    }

    #[test]
    fn trace_grid_monotone() {
        let g = LoopGeometry::vacuum(0.05).unwrap();
        let r = propagate_probe(&g, 1e-4, Complex64::new(0.5, 0.5), &probe(), &AtomSpecies::sodium_like(), &Default::default()).unwrap();
        assert!(r.z_grid.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(r.z_grid.len(), r.probe_trace.len());
        assert!((r.z_grid.last().unwrap() - g.circumference()).abs() < 1e-12);
    }
}
