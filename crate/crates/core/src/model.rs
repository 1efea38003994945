//! Domain types: atoms, fields, medium segments and the loop they tile.
//!
//! All quantities are SI. Constructors validate the invariants and the
//! fields stay private so a value, once built, is always valid.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::constants::{AMU, C, EPS0, HBAR};
use crate::{Error, Result};

/// Relative tolerance for the segment lengths to tile the periphery.
pub const TILING_TOLERANCE: f64 = 1e-9;

fn require(name: &'static str, value: f64, ok: bool, constraint: &'static str) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            constraint,
        })
    }
}

/// The working atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomSpecies {
    mass: f64,
    dipole_moment: f64,
    cross_section: f64,
}

impl AtomSpecies {
    pub fn new(mass: f64, dipole_moment: f64, cross_section: f64) -> Result<Self> {
        require("mass", mass, mass > 0.0, "> 0 kg")?;
        require(
            "dipole_moment",
            dipole_moment,
            dipole_moment > 0.0,
            "> 0 C m",
        )?;
        require(
            "cross_section",
            cross_section,
            cross_section >= 0.0,
            ">= 0 m^2",
        )?;
        Ok(Self {
            mass,
            dipole_moment,
            cross_section,
        })
    }

    /// Sodium-like atom: 23 amu, d = 2.1e-29 C m, no velocity-changing collisions.
    pub fn sodium_like() -> Self {
        Self {
            mass: 23.0 * AMU,
            dipole_moment: 2.1e-29,
            cross_section: 0.0,
        }
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn dipole_moment(&self) -> f64 {
        self.dipole_moment
    }

    pub fn cross_section(&self) -> f64 {
        self.cross_section
    }

    pub fn with_cross_section(self, cross_section: f64) -> Result<Self> {
        Self::new(self.mass, self.dipole_moment, cross_section)
    }

    /// Recoil velocity `hbar k_p / m` for absorbing one probe photon.
    pub fn recoil_velocity(&self, probe: &ProbeField) -> f64 {
        HBAR * probe.wavenumber() / self.mass
    }

    /// `m c^2 / (hbar omega_p)`: the ratio of matter-wave to optical
    /// Sagnac sensitivity per unit area, equal to `tan^2 theta_crit`.
    pub fn matter_light_ratio(&self, probe: &ProbeField) -> f64 {
        self.mass * C * C / (HBAR * probe.angular_frequency())
    }
}

/// Weak probe beam.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeField {
    wavelength: f64,
    beam_area: f64,
}

impl ProbeField {
    pub fn new(wavelength: f64, beam_area: f64) -> Result<Self> {
        require("wavelength", wavelength, wavelength > 0.0, "> 0 m")?;
        require("beam_area", beam_area, beam_area > 0.0, "> 0 m^2")?;
        Ok(Self {
            wavelength,
            beam_area,
        })
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn beam_area(&self) -> f64 {
        self.beam_area
    }

    pub fn wavenumber(&self) -> f64 {
        2.0 * PI / self.wavelength
    }

    pub fn angular_frequency(&self) -> f64 {
        C * self.wavenumber()
    }
}

/// Strong control field of the Lambda scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ControlField {
    rabi_frequency: Complex64,
    eta: f64,
}

impl ControlField {
    /// `eta = 1 - k_c,parallel / k_p` must lie in `[0, 2]`.
    pub fn new(rabi_frequency: Complex64, eta: f64) -> Result<Self> {
        let rabi = rabi_frequency.norm();
        require("control rabi_frequency", rabi, rabi > 0.0, "nonzero")?;
        if eta < 0.0 {
            return Err(Error::NegativeEta(eta));
        }
        require("eta", eta, eta <= 2.0, "in [0, 2]")?;
        Ok(Self {
            rabi_frequency,
            eta,
        })
    }

    pub fn rabi_frequency(&self) -> Complex64 {
        self.rabi_frequency
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }
}

/// One stretch of the loop periphery. Zero density means vacuum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumSegment {
    length: f64,
    density: f64,
    gamma: f64,
    control: ControlField,
    temperature_ratio: f64,
}

impl MediumSegment {
    pub fn new(
        length: f64,
        density: f64,
        gamma: f64,
        control: ControlField,
        temperature_ratio: f64,
    ) -> Result<Self> {
        require("length", length, length > 0.0, "> 0 m")?;
        require("density", density, density >= 0.0, ">= 0 m^-3")?;
        if density > 0.0 {
            require("gamma", gamma, gamma > 0.0, "> 0 rad/s in a medium")?;
        } else {
            require("gamma", gamma, gamma >= 0.0, ">= 0 rad/s")?;
        }
        require(
            "temperature_ratio",
            temperature_ratio,
            temperature_ratio >= 0.0,
            ">= 0",
        )?;
        Ok(Self {
            length,
            density,
            gamma,
            control,
            temperature_ratio,
        })
    }

    /// Empty stretch of the beam path. The control field of a vacuum
    /// segment is a placeholder and never read.
    pub fn vacuum(length: f64) -> Result<Self> {
        let control = ControlField {
            rabi_frequency: Complex64::new(1.0, 0.0),
            eta: 0.0,
        };
        Self::new(length, 0.0, 0.0, control, 0.0)
    }

    pub fn is_vacuum(&self) -> bool {
        self.density == 0.0
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn density(&self) -> f64 {
        self.density
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn control(&self) -> &ControlField {
        &self.control
    }

    pub fn eta(&self) -> f64 {
        self.control.eta
    }

    /// `T / T_rec`, read everywhere as `<v^2> / v_rec^2`.
    pub fn temperature_ratio(&self) -> f64 {
        self.temperature_ratio
    }

    pub fn with_length(self, length: f64) -> Result<Self> {
        Self::new(
            length,
            self.density,
            self.gamma,
            self.control,
            self.temperature_ratio,
        )
    }

    pub fn with_control(self, control: ControlField) -> Self {
        Self { control, ..self }
    }

    pub fn with_temperature_ratio(self, temperature_ratio: f64) -> Result<Self> {
        Self::new(
            self.length,
            self.density,
            self.gamma,
            self.control,
            temperature_ratio,
        )
    }

    /// Closed-form medium quantities, `None` for a vacuum segment.
    pub fn derive(
        &self,
        species: &AtomSpecies,
        probe: &ProbeField,
    ) -> Option<DerivedMediumQuantities> {
        if self.is_vacuum() {
            return None;
        }
        let g = coupling_constant(species, probe);
        let tan2_theta = g * g * self.density / self.control.rabi_frequency.norm_sqr();
        let tan2_theta_crit = species.matter_light_ratio(probe);
        let v_rec = species.recoil_velocity(probe);
        Some(DerivedMediumQuantities {
            g,
            tan2_theta,
            tan2_theta_crit,
            v_rec,
            v_gr: group_velocity(tan2_theta, self.control.eta, v_rec),
            xi: tan2_theta_crit / tan2_theta,
            alpha: g * g * self.density * self.length / (self.gamma * C),
        })
    }
}

/// Quantities that follow from a medium segment in closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedMediumQuantities {
    /// Coupling constant (rad/s per sqrt(m^-3)).
    pub g: f64,
    pub tan2_theta: f64,
    pub tan2_theta_crit: f64,
    pub v_rec: f64,
    pub v_gr: f64,
    pub xi: f64,
    /// Opacity without EIT.
    pub alpha: f64,
}

impl DerivedMediumQuantities {
    pub fn cos2_theta(&self) -> f64 {
        1.0 / (1.0 + self.tan2_theta)
    }

    pub fn sin2_theta(&self) -> f64 {
        self.tan2_theta / (1.0 + self.tan2_theta)
    }
}

/// `g = d sqrt(omega_p / (2 hbar eps0 F))`.
pub fn coupling_constant(species: &AtomSpecies, probe: &ProbeField) -> f64 {
    species.dipole_moment
        * libm::sqrt(probe.angular_frequency() / (2.0 * HBAR * EPS0 * probe.beam_area))
}

/// `v_gr = c cos^2 theta + eta v_rec sin^2 theta`.
pub fn group_velocity(tan2_theta: f64, eta: f64, v_rec: f64) -> f64 {
    if tan2_theta.is_infinite() {
        return eta * v_rec;
    }
    let cos2 = 1.0 / (1.0 + tan2_theta);
    let sin2 = tan2_theta / (1.0 + tan2_theta);
    C * cos2 + eta * v_rec * sin2
}

/// `xi = tan^2 theta_crit / tan^2 theta`; infinite for an empty medium.
pub fn xi_parameter(tan2_theta: f64, tan2_theta_crit: f64) -> Result<f64> {
    if tan2_theta == 0.0 {
        return Err(Error::InfiniteXi);
    }
    require("tan2_theta", tan2_theta, tan2_theta > 0.0, "> 0")?;
    Ok(tan2_theta_crit / tan2_theta)
}

/// Control Rabi frequency (real, rad/s) that puts a medium of the given
/// density at the requested `xi`: `|Omega_c|^2 = g^2 n xi v_rec / c`.
pub fn control_rabi_for_xi(
    xi: f64,
    density: f64,
    species: &AtomSpecies,
    probe: &ProbeField,
) -> Result<f64> {
    require("xi", xi, xi > 0.0, "> 0")?;
    require("density", density, density > 0.0, "> 0 m^-3")?;
    let g = coupling_constant(species, probe);
    Ok(libm::sqrt(g * g * density * xi / species.matter_light_ratio(probe)))
}

/// Density giving opacity `alpha = g^2 n L / (gamma c)`.
pub fn density_for_opacity(
    alpha: f64,
    length: f64,
    gamma: f64,
    species: &AtomSpecies,
    probe: &ProbeField,
) -> Result<f64> {
    require("opacity", alpha, alpha > 0.0, "> 0")?;
    require("length", length, length > 0.0, "> 0 m")?;
    require("gamma", gamma, gamma > 0.0, "> 0 rad/s")?;
    let g = coupling_constant(species, probe);
    Ok(alpha * gamma * C / (g * g * length))
}

/// Ring of radius `R` whose periphery is tiled by ordered segments.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopGeometry {
    radius: f64,
    segments: Vec<MediumSegment>,
}

impl LoopGeometry {
    pub fn new(radius: f64, segments: Vec<MediumSegment>) -> Result<Self> {
        require("radius", radius, radius > 0.0, "> 0 m")?;
        let circumference = 2.0 * PI * radius;
        let total: f64 = segments.iter().map(|s| s.length).sum();
        if segments.is_empty()
            || ((total - circumference) / circumference).abs() > TILING_TOLERANCE
        {
            return Err(Error::SegmentsDoNotTile {
                total,
                circumference,
            });
        }
        Ok(Self { radius, segments })
    }

    /// Appends a vacuum segment covering whatever part of the periphery the
    /// given segments leave free.
    pub fn with_vacuum_filler(radius: f64, mut segments: Vec<MediumSegment>) -> Result<Self> {
        require("radius", radius, radius > 0.0, "> 0 m")?;
        let circumference = 2.0 * PI * radius;
        let total: f64 = segments.iter().map(|s| s.length).sum();
        let rest = circumference - total;
        if rest > TILING_TOLERANCE * circumference {
            segments.push(MediumSegment::vacuum(rest)?);
        }
        Self::new(radius, segments)
    }

    /// One medium segment filling the whole periphery.
    pub fn uniform(radius: f64, medium: MediumSegment) -> Result<Self> {
        let circumference = 2.0 * PI * radius;
        Self::new(radius, alloc::vec![medium.with_length(circumference)?])
    }

    pub fn vacuum(radius: f64) -> Result<Self> {
        let circumference = 2.0 * PI * radius;
        Self::new(radius, alloc::vec![MediumSegment::vacuum(circumference)?])
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn segments(&self) -> &[MediumSegment] {
        &self.segments
    }

    pub fn area(&self) -> f64 {
        PI * self.radius * self.radius
    }

    pub fn circumference(&self) -> f64 {
        2.0 * PI * self.radius
    }

    /// Sum of segment lengths (equals the circumference within the tiling tolerance).
    pub fn periphery(&self) -> f64 {
        self.segments.iter().map(|s| s.length).sum()
    }
}
