//! Rotational phase shifts.
//!
//! Each segment of the loop enhances the optical Sagnac phase by the local
//! factor `(xi + eta S) / (xi + eta)` with `S = m c^2 / (hbar omega_p)`.
//! Summing `L_seg` times that factor splits into the familiar light part
//! `2 pi Omega R / (lambda c) * sum L xi/(xi+eta)` and matter-wave part
//! `Omega R m / hbar * sum L eta/(xi+eta)`. Vacuum segments are the
//! `xi -> inf` limit and contribute a factor of exactly one.

use core::f64::consts::PI;

use crate::constants::{C, HBAR};
use crate::model::{AtomSpecies, LoopGeometry, MediumSegment, ProbeField};
use crate::{Error, Result};

/// `xi` of a segment, infinite for vacuum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Xi {
    Finite(f64),
    Infinite,
}

impl Xi {
    pub fn of(segment: &MediumSegment, species: &AtomSpecies, probe: &ProbeField) -> Self {
        match segment.derive(species, probe) {
            Some(d) => Xi::Finite(d.xi),
            None => Xi::Infinite,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Xi::Finite(x) => Some(x),
            Xi::Infinite => None,
        }
    }
}

/// `(4 pi / (lambda c)) Omega A` with `A = pi R^2`.
pub fn sagnac_phase_optical(geometry: &LoopGeometry, omega: f64, probe: &ProbeField) -> f64 {
    4.0 * PI / (probe.wavelength() * C) * omega * geometry.area()
}

/// Matter-wave Sagnac phase `2 m Omega A / hbar` for the same loop.
pub fn sagnac_phase_matter(geometry: &LoopGeometry, omega: f64, species: &AtomSpecies) -> f64 {
    2.0 * species.mass() * omega * geometry.area() / HBAR
}

/// Local enhancement `(xi + eta S) / (xi + eta)`.
pub fn local_enhancement(xi: Xi, eta: f64, matter_light_ratio: f64) -> Option<f64> {
    match xi {
        Xi::Infinite => Some(1.0),
        Xi::Finite(x) if x == 0.0 && eta == 0.0 => None,
        Xi::Finite(x) => Some((x + eta * matter_light_ratio) / (x + eta)),
    }
}

/// Enhancement of a loop completely filled with one medium.
pub fn uniform_enhancement(xi: f64, eta: f64, matter_light_ratio: f64) -> Result<f64> {
    local_enhancement(Xi::Finite(xi), eta, matter_light_ratio)
        .ok_or(Error::DegenerateSegment { index: 0 })
}

/// Length-weighted mean of the local enhancement over the periphery.
pub fn mean_enhancement(
    geometry: &LoopGeometry,
    probe: &ProbeField,
    species: &AtomSpecies,
) -> Result<f64> {
    let s = species.matter_light_ratio(probe);
    let mut weighted = 0.0;
    for (index, seg) in geometry.segments().iter().enumerate() {
        let xi = Xi::of(seg, species, probe);
        let f = local_enhancement(xi, seg.eta(), s).ok_or(Error::DegenerateSegment { index })?;
        weighted += seg.length() * f;
    }
    Ok(weighted / geometry.periphery())
}

/// Hybrid light/matter-wave Sagnac phase of the loop.
///
/// With `eta = 0` in every segment this is bit-identical to
/// [`sagnac_phase_optical`]: every local factor is exactly one.
pub fn sagnac_phase_hybrid(
    geometry: &LoopGeometry,
    omega: f64,
    probe: &ProbeField,
    species: &AtomSpecies,
) -> Result<f64> {
    let mean = mean_enhancement(geometry, probe, species)?;
    Ok(sagnac_phase_optical(geometry, omega, probe) * mean)
}

/// Ratio of hybrid to optical phase.
pub fn enhancement_factor(
    geometry: &LoopGeometry,
    omega: f64,
    probe: &ProbeField,
    species: &AtomSpecies,
) -> Result<f64> {
    if omega == 0.0 {
        return Err(Error::ZeroRotation);
    }
    let hybrid = sagnac_phase_hybrid(geometry, omega, probe, species)?;
    Ok(hybrid / sagnac_phase_optical(geometry, omega, probe))
}
