//! One-shot closed-form evaluation of a gyroscope configuration.

use crate::absorption::absorption_coefficient;
use crate::model::{AtomSpecies, LoopGeometry, ProbeField};
use crate::phase::{sagnac_phase_hybrid, sagnac_phase_optical};
use crate::validity::{loop_validity, ValidityFlags, ValidityOptions};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SagnacReport {
    pub phase_optical: f64,
    pub phase_hybrid: f64,
    /// `None` at zero rotation.
    pub enhancement: Option<f64>,
    /// Summed over medium segments.
    pub kappa_l_total: f64,
    pub validity: ValidityFlags,
}

pub fn sagnac_report(
    geometry: &LoopGeometry,
    omega: f64,
    probe: &ProbeField,
    species: &AtomSpecies,
    options: &ValidityOptions,
) -> Result<SagnacReport> {
    let phase_optical = sagnac_phase_optical(geometry, omega, probe);
    let phase_hybrid = sagnac_phase_hybrid(geometry, omega, probe, species)?;
    let enhancement = (phase_optical != 0.0).then(|| phase_hybrid / phase_optical);
    let mut kappa_l_total = 0.0;
    for seg in geometry.segments() {
        kappa_l_total += absorption_coefficient(seg, probe, species, options.absorption)?;
    }
    Ok(SagnacReport {
        phase_optical,
        phase_hybrid,
        enhancement,
        kappa_l_total,
        validity: loop_validity(geometry, probe, species, omega, options)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{control_rabi_for_xi, ControlField, MediumSegment};
    use crate::Complex64;

    #[test]
    fn report_consistency() {
        let probe = ProbeField::new(500e-9, 1e-6).unwrap();
        let s = AtomSpecies::sodium_like();
        let n = 1e17;
        let rabi = control_rabi_for_xi(10.0, n, &s, &probe).unwrap();
        let ctl = ControlField::new(Complex64::new(rabi, 0.0), 1.0).unwrap();
        let seg = MediumSegment::new(1e-3, n, 6.1e7, ctl, 2.0).unwrap();
        let g = LoopGeometry::with_vacuum_filler(0.1, alloc::vec![seg, seg]).unwrap();
        let r = sagnac_report(&g, 7.29e-5, &probe, &s, &ValidityOptions::default()).unwrap();
        assert_eq!(r.enhancement, Some(r.phase_hybrid / r.phase_optical));
        let one = absorption_coefficient(&seg, &probe, &s, Default::default()).unwrap();
        assert!((r.kappa_l_total - 2.0 * one).abs() <= 1e-15 * one);
        assert!(r.kappa_l_total > 0.0);

        let still = sagnac_report(&g, 0.0, &probe, &s, &ValidityOptions::default()).unwrap();
        assert_eq!(still.enhancement, None);
        assert_eq!(still.phase_hybrid, 0.0);
    }
}
