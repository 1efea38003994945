#![allow(dead_code)]

use sagnac_core::model::{control_rabi_for_xi, density_for_opacity};
use sagnac_core::{AtomSpecies, Complex64, ControlField, LoopGeometry, MediumSegment, ProbeField};

pub const GAMMA: f64 = 6.1e7;
pub const RADIUS: f64 = 0.1;

pub fn probe() -> ProbeField {
    ProbeField::new(500e-9, 1e-6).unwrap()
}

pub fn species() -> AtomSpecies {
    AtomSpecies::sodium_like()
}

pub fn v_rec() -> f64 {
    species().recoil_velocity(&probe())
}

pub fn segment(length: f64, density: f64, xi: f64, eta: f64, t: f64) -> MediumSegment {
    let rabi = control_rabi_for_xi(xi, density, &species(), &probe()).unwrap();
    let ctl = ControlField::new(Complex64::new(rabi, 0.0), eta).unwrap();
    MediumSegment::new(length, density, GAMMA, ctl, t).unwrap()
}

/// Cold or warm medium filling the whole loop.
pub fn uniform_loop(xi: f64, eta: f64, t: f64) -> LoopGeometry {
    let seg = segment(1.0, 1e17, xi, eta, t);
    LoopGeometry::uniform(RADIUS, seg).unwrap()
}

/// Single medium segment with the given opacity, vacuum elsewhere.
pub fn trap_loop(alpha: f64, length: f64, xi: f64, t: f64) -> LoopGeometry {
    let n = density_for_opacity(alpha, length, GAMMA, &species(), &probe()).unwrap();
    let seg = segment(length, n, xi, 1.0, t);
    LoopGeometry::with_vacuum_filler(RADIUS, vec![seg]).unwrap()
}

/// Rotation rate giving `Omega R = fraction * v_rec`.
pub fn omega_for(fraction: f64) -> f64 {
    fraction * v_rec() / RADIUS
}
