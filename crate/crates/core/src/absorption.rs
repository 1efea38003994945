//! Thermal absorption and the bounds it places on `xi`.
//!
//! Thermal motion detunes the Raman resonance by `eta k_p v` and turns the
//! perfect EIT window into a weak absorber whose strength grows as the
//! group velocity drops. Temperatures enter only as `T / T_rec`, which is
//! read as `<v^2> / v_rec^2`.

use crate::constants::C;
use crate::model::{coupling_constant, AtomSpecies, MediumSegment, ProbeField};
use crate::{Error, Result};

/// Which closed form to use for `kappa L`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum AbsorptionModel {
    /// `eta (k_p L)^2 / alpha * (T/T_rec) / (xi (xi + eta))`, from the
    /// velocity-averaged propagation equation.
    #[default]
    General,
    /// `(k_p L)^2 / (eta alpha) * (T/T_rec) / (xi (xi + 1))`, the form used
    /// by the `fig3-*` presets; equal to `General` at `eta = 1`.
    Fig3,
}

/// `alpha = g^2 n L / (gamma c)`; zero for vacuum.
pub fn opacity(segment: &MediumSegment, g: f64) -> f64 {
    if segment.is_vacuum() {
        return 0.0;
    }
    g * g * segment.density() * segment.length() / (segment.gamma() * C)
}

/// Numerator `C` and offset `b` so that `kappa L = C / (xi (xi + b))`.
fn kappa_terms(
    model: AbsorptionModel,
    eta: f64,
    alpha: f64,
    kp_l: f64,
    temperature_ratio: f64,
) -> Result<(f64, f64)> {
    let base = kp_l * kp_l / alpha * temperature_ratio;
    match model {
        AbsorptionModel::General => Ok((eta * base, eta)),
        AbsorptionModel::Fig3 if eta == 0.0 => Err(Error::NoAbsorptionChannel),
        AbsorptionModel::Fig3 => Ok((base / eta, 1.0)),
    }
}

/// `kappa L` from scalar inputs.
pub fn kappa_l(
    model: AbsorptionModel,
    xi: f64,
    eta: f64,
    alpha: f64,
    kp_l: f64,
    temperature_ratio: f64,
) -> Result<f64> {
    let (num, offset) = kappa_terms(model, eta, alpha, kp_l, temperature_ratio)?;
    if num == 0.0 {
        return Ok(0.0);
    }
    if !(xi > 0.0) {
        return Err(Error::InvalidParameter {
            name: "xi",
            value: xi,
            constraint: "> 0 when absorbing",
        });
    }
    Ok(num / (xi * (xi + offset)))
}

/// Absorption coefficient `kappa L` of one segment (zero for vacuum).
pub fn absorption_coefficient(
    segment: &MediumSegment,
    probe: &ProbeField,
    species: &AtomSpecies,
    model: AbsorptionModel,
) -> Result<f64> {
    let Some(d) = segment.derive(species, probe) else {
        return Ok(0.0);
    };
    kappa_l(
        model,
        d.xi,
        segment.eta(),
        d.alpha,
        probe.wavenumber() * segment.length(),
        segment.temperature_ratio(),
    )
}

/// Smallest `xi` with `kappa L <= budget` for the segment's density,
/// length and temperature (the control field is what sets `xi`).
pub fn min_xi_for_absorption(
    segment: &MediumSegment,
    probe: &ProbeField,
    species: &AtomSpecies,
    kappa_budget: f64,
    model: AbsorptionModel,
) -> Result<f64> {
    if !(kappa_budget > 0.0) {
        return Err(Error::InvalidParameter {
            name: "kappa_budget",
            value: kappa_budget,
            constraint: "> 0",
        });
    }
    let g = coupling_constant(species, probe);
    let alpha = opacity(segment, g);
    if alpha == 0.0 {
        return Ok(0.0);
    }
    let kp_l = probe.wavenumber() * segment.length();
    let (num, offset) = kappa_terms(
        model,
        segment.eta(),
        alpha,
        kp_l,
        segment.temperature_ratio(),
    )?;
    Ok(min_xi(num, offset, kappa_budget))
}

/// Positive root of `xi (xi + b) = C / budget`, written without the
/// cancellation of `(-b + sqrt(b^2 + 4q)) / 2`.
pub fn min_xi(numerator: f64, offset: f64, kappa_budget: f64) -> f64 {
    let q = numerator / kappa_budget;
    if q == 0.0 {
        return 0.0;
    }
    2.0 * q / (offset + libm::sqrt(offset * offset + 4.0 * q))
}

/// Collision bound on `v_gr / v_rec`: `L n sigma sqrt(T / T_rec)`.
pub fn collision_limited_vgr_min(segment: &MediumSegment, species: &AtomSpecies) -> f64 {
    segment.length()
        * segment.density()
        * species.cross_section()
        * libm::sqrt(segment.temperature_ratio())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{control_rabi_for_xi, density_for_opacity, ControlField};
    use crate::Complex64;
    use core::f64::consts::PI;

    fn probe() -> ProbeField {
        ProbeField::new(500e-9, 1e-6).unwrap()
    }

    /// Independent quadratic-formula oracle for `xi (xi + 1) = q`.
    fn quadratic_root(q: f64) -> f64 {
        (-1.0 + (1.0 + 4.0 * q).sqrt()) / 2.0
    }

    fn fig3_segment(alpha: f64, length: f64, xi: f64, t: f64) -> MediumSegment {
        let s = AtomSpecies::sodium_like();
        let n = density_for_opacity(alpha, length, 6.1e7, &s, &probe()).unwrap();
        let rabi = control_rabi_for_xi(xi, n, &s, &probe()).unwrap();
        let ctl = ControlField::new(Complex64::new(rabi, 0.0), 1.0).unwrap();
        MediumSegment::new(length, n, 6.1e7, ctl, t).unwrap()
    }

    #[test]
    fn quadratic_knees() {
        let kp = 2.0 * PI / 500e-9;
        let left = quadratic_root((kp * 100e-6).powi(2) / 100.0);
        let right = quadratic_root((kp * 1e-2).powi(2) / 10.0);
        assert!((left - 125.16).abs() < 0.05, "{left}");
        assert!((right - 3.974e4).abs() < 10.0, "{right}");
        let seg = fig3_segment(100.0, 100e-6, left, 1.0);
        let k = absorption_coefficient(&seg, &probe(), &AtomSpecies::sodium_like(), AbsorptionModel::General).unwrap();
        assert!((k - 1.0).abs() < 1e-9);
        let xmin = min_xi_for_absorption(&seg, &probe(), &AtomSpecies::sodium_like(), 1.0, AbsorptionModel::Fig3).unwrap();
        assert!((xmin / left - 1.0).abs() < 1e-12);
    }

    #[test]
    fn models_agree_at_eta_one() {
        for xi in [0.01, 1.0, 300.0, 1e6] {
            let a = kappa_l(AbsorptionModel::General, xi, 1.0, 37.0, 1234.0, 5.0).unwrap();
            let b = kappa_l(AbsorptionModel::Fig3, xi, 1.0, 37.0, 1234.0, 5.0).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn eta_zero_behaviour() {
        assert_eq!(kappa_l(AbsorptionModel::General, 3.0, 0.0, 10.0, 100.0, 1.0), Ok(0.0));
        assert_eq!(
            kappa_l(AbsorptionModel::Fig3, 3.0, 0.0, 10.0, 100.0, 1.0),
            Err(Error::NoAbsorptionChannel)
        );
    }

    #[test]
    fn opacity_linear_in_density() {
        let s = AtomSpecies::sodium_like();
        let g = coupling_constant(&s, &probe());
        let ctl = ControlField::new(Complex64::new(1e7, 0.0), 1.0).unwrap();
        let a = MediumSegment::new(1e-3, 1e16, 6.1e7, ctl, 1.0).unwrap();
        let b = MediumSegment::new(1e-3, 2e16, 6.1e7, ctl, 1.0).unwrap();
        assert!((opacity(&b, g) / opacity(&a, g) - 2.0).abs() < 1e-15);
        assert_eq!(opacity(&MediumSegment::vacuum(1.0).unwrap(), g), 0.0);
    }

    #[test]
    fn min_xi_limits_and_monotonicity() {
        assert!(min_xi(10.0, 1.0, 1e300) < 1e-290);
        let cold = fig3_segment(100.0, 100e-6, 10.0, 1.0);
        let warm = cold.with_temperature_ratio(2.0).unwrap();
        let s = AtomSpecies::sodium_like();
        let a = min_xi_for_absorption(&cold, &probe(), &s, 1.0, AbsorptionModel::General).unwrap();
        let b = min_xi_for_absorption(&warm, &probe(), &s, 1.0, AbsorptionModel::General).unwrap();
        assert!(b > a);
        assert!(min_xi_for_absorption(&cold, &probe(), &s, 0.0, AbsorptionModel::General).is_err());
    }

    #[test]
    fn collision_bound_gas_cell() {
        // L = 1 cm, n = 1e11 cm^-3, sigma = 1e-12 / 1e-10 cm^2
        let ctl = ControlField::new(Complex64::new(1e7, 0.0), 1.0).unwrap();
        let seg = MediumSegment::new(1e-2, 1e17, 6.1e7, ctl, 1.0).unwrap();
        let lo = AtomSpecies::sodium_like().with_cross_section(1e-16).unwrap();
        let hi = AtomSpecies::sodium_like().with_cross_section(1e-14).unwrap();
        assert!((collision_limited_vgr_min(&seg, &lo) - 0.1).abs() < 1e-12);
        assert!((collision_limited_vgr_min(&seg, &hi) - 10.0).abs() < 1e-12);
        assert_eq!(collision_limited_vgr_min(&seg, &AtomSpecies::sodium_like()), 0.0);
    }
}
