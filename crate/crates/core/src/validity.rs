//! Regime checks behind the closed-form absorption and phase results.

use crate::absorption::{absorption_coefficient, AbsorptionModel};
use crate::constants::C;
use crate::model::{AtomSpecies, LoopGeometry, MediumSegment, ProbeField};
use crate::Result;

/// Default threshold for "much smaller than".
pub const DEFAULT_EPSILON: f64 = 1e-2;

/// Slack on the `kappa L <= 1` comparison so that a design point sitting
/// exactly on the budget passes.
const KAPPA_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidityOptions {
    pub epsilon: f64,
    pub absorption: AbsorptionModel,
}

impl Default for ValidityOptions {
    fn default() -> Self {
        Self {
            epsilon: DEFAULT_EPSILON,
            absorption: AbsorptionModel::General,
        }
    }
}

/// Named regime flags. `true` means the condition holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidityFlags {
    /// `eta k_p^2 <v^2> <= eps |Omega_c|^2`
    pub doppler_below_rabi: bool,
    /// `eta k_p^2 <v^2> <= eps |Omega_c|^4 / gamma^2`
    pub doppler_below_eit_width: bool,
    /// `xi >= 1 / alpha`
    pub xi_above_inverse_opacity: bool,
    /// `kappa L <= 1`
    pub absorption_within_budget: bool,
    /// `Omega R <= eps v_rec` and `Omega R <= eps c`
    pub first_order_rotation: bool,
}

impl ValidityFlags {
    pub const NAMES: [&'static str; 5] = [
        "doppler_below_rabi",
        "doppler_below_eit_width",
        "xi_above_inverse_opacity",
        "absorption_within_budget",
        "first_order_rotation",
    ];

    pub const ALL_PASS: Self = Self {
        doppler_below_rabi: true,
        doppler_below_eit_width: true,
        xi_above_inverse_opacity: true,
        absorption_within_budget: true,
        first_order_rotation: true,
    };

    pub fn as_array(&self) -> [(&'static str, bool); 5] {
        let v = [
            self.doppler_below_rabi,
            self.doppler_below_eit_width,
            self.xi_above_inverse_opacity,
            self.absorption_within_budget,
            self.first_order_rotation,
        ];
        let mut out = [("", false); 5];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = (Self::NAMES[i], v[i]);
        }
        out
    }

    pub fn all_pass(&self) -> bool {
        self.as_array().iter().all(|(_, ok)| *ok)
    }

    /// Flag-wise AND.
    pub fn and(self, other: Self) -> Self {
        Self {
            doppler_below_rabi: self.doppler_below_rabi && other.doppler_below_rabi,
            doppler_below_eit_width: self.doppler_below_eit_width
                && other.doppler_below_eit_width,
            xi_above_inverse_opacity: self.xi_above_inverse_opacity
                && other.xi_above_inverse_opacity,
            absorption_within_budget: self.absorption_within_budget
                && other.absorption_within_budget,
            first_order_rotation: self.first_order_rotation && other.first_order_rotation,
        }
    }
}

/// Evaluates the flags for one segment. Vacuum passes everything except
/// possibly the rotation check, which concerns the loop as a whole.
pub fn validity_check(
    segment: &MediumSegment,
    probe: &ProbeField,
    species: &AtomSpecies,
    omega: f64,
    radius: f64,
    options: &ValidityOptions,
) -> Result<ValidityFlags> {
    let eps = options.epsilon;
    let v_rec = species.recoil_velocity(probe);
    let rim = (omega * radius).abs();
    let first_order_rotation = rim <= eps * v_rec && rim <= eps * C;

    let Some(d) = segment.derive(species, probe) else {
        return Ok(ValidityFlags {
            first_order_rotation,
            ..ValidityFlags::ALL_PASS
        });
    };

    let kp = probe.wavenumber();
    let doppler = segment.eta() * kp * kp * segment.temperature_ratio() * v_rec * v_rec;
    let rabi2 = segment.control().rabi_frequency().norm_sqr();
    let gamma = segment.gamma();
    let kappa = absorption_coefficient(segment, probe, species, options.absorption)?;

    Ok(ValidityFlags {
        doppler_below_rabi: doppler <= eps * rabi2,
        doppler_below_eit_width: doppler <= eps * rabi2 * rabi2 / (gamma * gamma),
        xi_above_inverse_opacity: d.xi * d.alpha >= 1.0,
        absorption_within_budget: kappa <= 1.0 + KAPPA_SLACK,
        first_order_rotation,
    })
}

/// Flags AND-ed over all segments of a loop.
pub fn loop_validity(
    geometry: &LoopGeometry,
    probe: &ProbeField,
    species: &AtomSpecies,
    omega: f64,
    options: &ValidityOptions,
) -> Result<ValidityFlags> {
    geometry
        .segments()
        .iter()
        .try_fold(ValidityFlags::ALL_PASS, |acc, seg| {
            validity_check(seg, probe, species, omega, geometry.radius(), options)
                .map(|f| acc.and(f))
        })
}
