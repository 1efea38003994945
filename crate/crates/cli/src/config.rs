//! Run configuration: TOML schema, defaults, validation and echo.
//!
//! Parsing goes through [`RawConfig`], a direct image of the document with
//! every key optional. Layers (built-in defaults, a preset, the user's file,
//! command-line flags) are merged at that level and validated once into a
//! [`RunConfig`]. [`RunConfig::to_raw`] writes every field back in SI units
//! so that an echoed configuration parses to an equal value.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use sagnac_core::absorption::AbsorptionModel;
use sagnac_core::model::{control_rabi_for_xi, density_for_opacity};
use sagnac_core::{AtomSpecies, Complex64, ControlField, LoopGeometry, MediumSegment, ProbeField};

use crate::units::{format_si, parse_quantity, Dimension, UnitError};

pub const DEFAULT_MASS: &str = "23 amu";
pub const DEFAULT_DIPOLE_MOMENT: f64 = 2.1e-29;
pub const DEFAULT_WAVELENGTH: f64 = 500e-9;
pub const DEFAULT_BEAM_AREA: f64 = 1e-6;
pub const DEFAULT_RADIUS: f64 = 0.1;
/// Sidereal rotation rate of the Earth (rad/s).
pub const EARTH_RATE: f64 = 7.292_115_0e-5;
pub const DEFAULT_GAMMA: f64 = 6.1e7;
pub const DEFAULT_QUADRATURE_ORDER: usize = 64;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_KAPPA_BUDGET: f64 = 1.0;
pub const DEFAULT_TEMPERATURES: [f64; 3] = [1.0, 1e3, 1e6];

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("config document: {0}")]
    Syntax(#[from] toml::de::Error),
    #[error(transparent)]
    Unit(#[from] UnitError),
    #[error("{key}: {message}")]
    Invalid { key: String, message: String },
    #[error("{key}: {source}")]
    Model {
        key: String,
        source: sagnac_core::Error,
    },
}

fn invalid(key: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Invalid {
        key: key.into(),
        message: message.into(),
    }
}

/// A number, or a number followed by a unit-like tag (`"1000 T_rec"`, `"10 S"`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Number(f64),
    Text(String),
}

impl Scalar {
    fn number(&self, key: &str, tags: &[&str], expected: &str) -> Result<(f64, Option<String>), ConfigError> {
        match self {
            Scalar::Number(x) => Ok((*x, None)),
            Scalar::Text(t) => {
                let bad = || invalid(key, format!("cannot read {t:?} as {expected}"));
                let mut parts = t.split_whitespace();
                let x: f64 = parts.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
                match (parts.next(), parts.next()) {
                    (None, _) => Ok((x, None)),
                    (Some(tag), None) if tags.contains(&tag) => Ok((x, Some(tag.to_string()))),
                    _ => Err(bad()),
                }
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSegment {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub density: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub opacity: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xi: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub control_rabi: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub temperature_ratio: Option<Scalar>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mass: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dipole_moment: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_section: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wavelength: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beam_area: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub absorption: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrature_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa_budget: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep_variable: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep_scale: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep_min: Option<Scalar>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep_max: Option<Scalar>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep_count: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep_temperatures: Option<Vec<Scalar>>,
    #[serde(rename = "segment", skip_serializing_if = "Option::is_none")]
    pub segments: Option<Vec<RawSegment>>,
}

macro_rules! overlay {
    ($base:ident, $top:ident, $($field:ident),*) => {
        RawConfig { $($field: $top.$field.or($base.$field)),* }
    };
}

impl RawConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        Ok(toml::from_str(text)?)
    }

    /// Keys set in `top` win; `segment` tables are replaced as a whole.
    pub fn overlay(self, top: RawConfig) -> RawConfig {
        let base = self;
        overlay!(
            base, top, mass, dipole_moment, cross_section, wavelength, beam_area, radius, omega,
            mode, absorption, quadrature_order, tolerance, epsilon, kappa_budget, output,
            sweep_variable, sweep_scale, sweep_min, sweep_max, sweep_count, sweep_temperatures,
            segments
        )
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config fields are plain TOML values")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Mode {
    /// Closed forms only.
    #[default]
    Analytic,
    /// Numeric envelope propagation, compared against the closed forms.
    Oracle,
    /// Both, side by side.
    Both,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Analytic => "analytic",
            Mode::Oracle => "oracle",
            Mode::Both => "both",
        }
    }

    pub fn numeric(self) -> bool {
        self != Mode::Analytic
    }

    pub fn closed_form(self) -> bool {
        self != Mode::Oracle
    }
}

pub fn absorption_name(model: AbsorptionModel) -> &'static str {
    match model {
        AbsorptionModel::General => "general",
        AbsorptionModel::Fig3 => "fig3",
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentLength {
    Fixed(f64),
    /// Whatever the other segments leave of the periphery.
    Fill,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Loading {
    Density(f64),
    /// Resonant opacity `alpha`; the density follows from the length.
    Opacity(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Control {
    Xi(f64),
    /// Real control Rabi frequency (rad/s).
    Rabi(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentSpec {
    pub length: SegmentLength,
    pub loading: Loading,
    pub gamma: f64,
    pub eta: f64,
    pub control: Control,
    pub temperature_ratio: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    Xi,
    TemperatureRatio,
    Eta,
}

impl SweepVariable {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepVariable::Xi => "xi",
            SweepVariable::TemperatureRatio => "temperature_ratio",
            SweepVariable::Eta => "eta",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepScale {
    Log,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SweepBound {
    Value(f64),
    /// Multiple of the matter/light ratio `S = mc^2 / (hbar omega_p)`.
    TimesS(f64),
}

impl SweepBound {
    fn resolve(self, s: f64) -> f64 {
        match self {
            SweepBound::Value(x) => x,
            SweepBound::TimesS(k) => k * s,
        }
    }

    fn to_scalar(self) -> Scalar {
        match self {
            SweepBound::Value(x) => Scalar::Number(x),
            SweepBound::TimesS(k) => Scalar::Text(format!("{k:e} S")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub scale: SweepScale,
    pub min: SweepBound,
    pub max: SweepBound,
    pub count: usize,
    /// Empty: use each segment's own temperature ratio.
    pub temperatures: Vec<f64>,
}

/// One evaluation point: the swept value and, for multi-curve sweeps, the
/// temperature ratio applied to every medium segment.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point {
    pub swept: Option<f64>,
    pub temperature_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub species: AtomSpecies,
    pub probe: ProbeField,
    pub radius: f64,
    pub omega: f64,
    pub segments: Vec<SegmentSpec>,
    pub sweep: Option<SweepSpec>,
    pub output: Option<PathBuf>,
    pub mode: Mode,
    pub absorption: AbsorptionModel,
    pub quadrature_order: usize,
    pub tolerance: f64,
    pub epsilon: f64,
    pub kappa_budget: f64,
}

fn quantity(key: &str, text: &Option<String>, dim: Dimension, default: f64) -> Result<f64, ConfigError> {
    match text {
        Some(t) => Ok(parse_quantity(key, t, dim)?),
        None => Ok(default),
    }
}

fn positive(key: &str, x: f64, what: &str) -> Result<f64, ConfigError> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(invalid(key, format!("{what} must be > 0 (got {x:e})")))
    }
}

fn temperature(key: &str, s: &Scalar) -> Result<f64, ConfigError> {
    let (t, _) = s.number(key, &["T_rec"], "a multiple of T_rec")?;
    if t >= 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(invalid(key, format!("temperature ratio <v^2>/v_rec^2 must be >= 0 (got {t:e})")))
    }
}

fn eta(key: &str, eta: f64) -> Result<f64, ConfigError> {
    if eta < 0.0 {
        return Err(invalid(
            key,
            format!("eta = {eta} rejected: the model requires eta >= 0 (negative eta drives the group velocity through zero)"),
        ));
    }
    if !(eta <= 2.0) {
        return Err(invalid(key, format!("eta = {eta} out of range: 0 <= eta <= 2")));
    }
    Ok(eta)
}

impl SegmentSpec {
    fn from_raw(i: usize, raw: &RawSegment) -> Result<Self, ConfigError> {
        let key = |k: &str| format!("segment[{i}].{k}");
        let length = match raw.length.as_deref() {
            None => return Err(invalid(key("length"), "missing (a length such as \"1 cm\", or \"fill\")")),
            Some("fill") => SegmentLength::Fill,
            Some(t) => SegmentLength::Fixed(positive(
                &key("length"),
                parse_quantity(&key("length"), t, Dimension::Length)?,
                "length",
            )?),
        };
        let loading = match (&raw.density, raw.opacity) {
            (Some(d), None) => Loading::Density(positive(
                &key("density"),
                parse_quantity(&key("density"), d, Dimension::Density)?,
                "density",
            )?),
            (None, Some(a)) => Loading::Opacity(positive(&key("opacity"), a, "opacity")?),
            _ => return Err(invalid(key("density"), "give exactly one of density or opacity")),
        };
        let gamma = positive(
            &key("gamma"),
            quantity(&key("gamma"), &raw.gamma, Dimension::AngularRate, DEFAULT_GAMMA)?,
            "gamma",
        )?;
        let eta = eta(&key("eta"), raw.eta.unwrap_or(1.0))?;
        let control = match (raw.xi, &raw.control_rabi) {
            (Some(x), None) => Control::Xi(positive(&key("xi"), x, "xi")?),
            (None, Some(r)) => Control::Rabi(positive(
                &key("control_rabi"),
                parse_quantity(&key("control_rabi"), r, Dimension::AngularRate)?,
                "control Rabi frequency",
            )?),
            _ => return Err(invalid(key("xi"), "give exactly one of xi or control_rabi")),
        };
        let temperature_ratio = match &raw.temperature_ratio {
            Some(s) => temperature(&key("temperature_ratio"), s)?,
            None => 0.0,
        };
        Ok(Self {
            length,
            loading,
            gamma,
            eta,
            control,
            temperature_ratio,
        })
    }

    fn to_raw(self) -> RawSegment {
        let (density, opacity) = match self.loading {
            Loading::Density(n) => (Some(format_si(n, Dimension::Density)), None),
            Loading::Opacity(a) => (None, Some(a)),
        };
        let (xi, control_rabi) = match self.control {
            Control::Xi(x) => (Some(x), None),
            Control::Rabi(r) => (None, Some(format_si(r, Dimension::AngularRate))),
        };
        RawSegment {
            length: Some(match self.length {
                SegmentLength::Fixed(l) => format_si(l, Dimension::Length),
                SegmentLength::Fill => "fill".into(),
            }),
            density,
            opacity,
            gamma: Some(format_si(self.gamma, Dimension::AngularRate)),
            eta: Some(self.eta),
            xi,
            control_rabi,
            temperature_ratio: Some(Scalar::Number(self.temperature_ratio)),
        }
    }
}

impl SweepSpec {
    fn from_raw(raw: &RawConfig) -> Result<Option<Self>, ConfigError> {
        let any = raw.sweep_scale.is_some()
            || raw.sweep_min.is_some()
            || raw.sweep_max.is_some()
            || raw.sweep_count.is_some()
            || raw.sweep_temperatures.is_some();
        let Some(variable) = raw.sweep_variable.as_deref() else {
            if any {
                return Err(invalid("sweep_variable", "missing (xi, temperature_ratio or eta) while other sweep keys are set"));
            }
            return Ok(None);
        };
        let variable = match variable {
            "xi" => SweepVariable::Xi,
            "temperature_ratio" => SweepVariable::TemperatureRatio,
            "eta" => SweepVariable::Eta,
            other => return Err(invalid("sweep_variable", format!("{other:?} is not one of xi, temperature_ratio, eta"))),
        };
        let scale = match raw.sweep_scale.as_deref().unwrap_or("log") {
            "log" => SweepScale::Log,
            "linear" => SweepScale::Linear,
            other => return Err(invalid("sweep_scale", format!("{other:?} is not one of log, linear"))),
        };
        let bound = |key: &str, s: &Option<Scalar>| -> Result<SweepBound, ConfigError> {
            let s = s.as_ref().ok_or_else(|| invalid(key, "missing"))?;
            let (x, tag) = s.number(key, &["S"], "a number or a multiple of S such as \"10 S\"")?;
            if !x.is_finite() {
                return Err(invalid(key, "must be finite"));
            }
            Ok(match tag {
                Some(_) => SweepBound::TimesS(x),
                None => SweepBound::Value(x),
            })
        };
        let min = bound("sweep_min", &raw.sweep_min)?;
        let max = bound("sweep_max", &raw.sweep_max)?;
        let count = raw.sweep_count.ok_or_else(|| invalid("sweep_count", "missing"))?;
        if count < 2 {
            return Err(invalid("sweep_count", format!("must be >= 2 (got {count})")));
        }
        let temperatures = match &raw.sweep_temperatures {
            Some(list) => {
                if variable == SweepVariable::TemperatureRatio {
                    return Err(invalid("sweep_temperatures", "cannot be combined with sweep_variable = \"temperature_ratio\""));
                }
                if list.is_empty() {
                    return Err(invalid("sweep_temperatures", "must not be empty"));
                }
                list.iter()
                    .enumerate()
                    .map(|(i, s)| temperature(&format!("sweep_temperatures[{i}]"), s))
                    .collect::<Result<_, _>>()?
            }
            None => Vec::new(),
        };
        Ok(Some(Self {
            variable,
            scale,
            min,
            max,
            count: count as usize,
            temperatures,
        }))
    }

    /// Swept values, endpoints included exactly.
    pub fn values(&self, matter_light_ratio: f64) -> Vec<f64> {
        let lo = self.min.resolve(matter_light_ratio);
        let hi = self.max.resolve(matter_light_ratio);
        let last = self.count - 1;
        (0..self.count)
            .map(|i| {
                if i == 0 {
                    return lo;
                }
                if i == last {
                    return hi;
                }
                let t = i as f64 / last as f64;
                match self.scale {
                    SweepScale::Log => 10f64.powf(lo.log10() + t * (hi.log10() - lo.log10())),
                    SweepScale::Linear => lo + t * (hi - lo),
                }
            })
            .collect()
    }
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        Self::from_raw(&RawConfig::from_toml(text)?)
    }

    pub fn from_raw(raw: &RawConfig) -> Result<Self, ConfigError> {
        let mass = parse_quantity("mass", raw.mass.as_deref().unwrap_or(DEFAULT_MASS), Dimension::Mass)?;
        let dipole = quantity("dipole_moment", &raw.dipole_moment, Dimension::DipoleMoment, DEFAULT_DIPOLE_MOMENT)?;
        let sigma = quantity("cross_section", &raw.cross_section, Dimension::Area, 0.0)?;
        let species = AtomSpecies::new(mass, dipole, sigma).map_err(|source| ConfigError::Model {
            key: "mass/dipole_moment/cross_section".into(),
            source,
        })?;
        let wavelength = quantity("wavelength", &raw.wavelength, Dimension::Length, DEFAULT_WAVELENGTH)?;
        let beam_area = quantity("beam_area", &raw.beam_area, Dimension::Area, DEFAULT_BEAM_AREA)?;
        let probe = ProbeField::new(wavelength, beam_area).map_err(|source| ConfigError::Model {
            key: "wavelength/beam_area".into(),
            source,
        })?;
        let radius = positive("radius", quantity("radius", &raw.radius, Dimension::Length, DEFAULT_RADIUS)?, "radius")?;
        let omega = quantity("omega", &raw.omega, Dimension::AngularRate, EARTH_RATE)?;

        let mode = match raw.mode.as_deref().unwrap_or("analytic") {
            "analytic" => Mode::Analytic,
            "oracle" => Mode::Oracle,
            "both" => Mode::Both,
            other => return Err(invalid("mode", format!("{other:?} is not one of analytic, oracle, both"))),
        };
        let absorption = match raw.absorption.as_deref().unwrap_or("general") {
            "general" => AbsorptionModel::General,
            "fig3" => AbsorptionModel::Fig3,
            other => return Err(invalid("absorption", format!("{other:?} is not one of general, fig3"))),
        };
        let quadrature_order = raw.quadrature_order.unwrap_or(DEFAULT_QUADRATURE_ORDER as u64);
        if !(1..=1024).contains(&quadrature_order) {
            return Err(invalid("quadrature_order", format!("must be in 1..=1024 (got {quadrature_order})")));
        }
        let tolerance = raw.tolerance.unwrap_or(DEFAULT_TOLERANCE);
        if !(tolerance > 0.0 && tolerance < 1.0) {
            return Err(invalid("tolerance", format!("relative integrator tolerance must be in (0, 1) (got {tolerance:e})")));
        }
        let epsilon = positive("epsilon", raw.epsilon.unwrap_or(sagnac_core::validity::DEFAULT_EPSILON), "epsilon")?;
        let kappa_budget = positive("kappa_budget", raw.kappa_budget.unwrap_or(DEFAULT_KAPPA_BUDGET), "kappa_budget")?;

        let segments = raw
            .segments
            .iter()
            .flatten()
            .enumerate()
            .map(|(i, s)| SegmentSpec::from_raw(i, s))
            .collect::<Result<Vec<_>, _>>()?;
        let sweep = SweepSpec::from_raw(raw)?;

        let config = Self {
            species,
            probe,
            radius,
            omega,
            segments,
            sweep,
            output: raw.output.as_ref().map(PathBuf::from),
            mode,
            absorption,
            quadrature_order: quadrature_order as usize,
            tolerance,
            epsilon,
            kappa_budget,
        };
        config.check_consistency()?;
        Ok(config)
    }

    fn check_consistency(&self) -> Result<(), ConfigError> {
        if self.segments.iter().filter(|s| s.length == SegmentLength::Fill).count() > 1 {
            return Err(invalid("segment", "at most one segment may use length = \"fill\""));
        }
        if let Some(sweep) = &self.sweep {
            if self.segments.is_empty() {
                return Err(invalid("sweep_variable", "a sweep needs at least one [[segment]]"));
            }
            let s = self.matter_light_ratio();
            for (key, bound) in [("sweep_min", sweep.min), ("sweep_max", sweep.max)] {
                let x = bound.resolve(s);
                if sweep.scale == SweepScale::Log && !(x > 0.0) {
                    return Err(invalid(key, format!("log-scale bounds must be > 0 (got {x:e})")));
                }
                match sweep.variable {
                    SweepVariable::Xi => {
                        positive(key, x, "xi")?;
                    }
                    SweepVariable::TemperatureRatio => {
                        temperature(key, &Scalar::Number(x))?;
                    }
                    SweepVariable::Eta => {
                        eta(key, x)?;
                    }
                }
            }
        }
        for point in self.points() {
            self.geometry_at(point)?;
        }
        self.geometry_at(Point::default())?;
        Ok(())
    }

    pub fn matter_light_ratio(&self) -> f64 {
        self.species.matter_light_ratio(&self.probe)
    }

    pub fn circumference(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.radius
    }

    /// Evaluation points in output order: temperatures outermost.
    pub fn points(&self) -> Vec<Point> {
        let Some(sweep) = &self.sweep else {
            return vec![Point::default()];
        };
        let values = sweep.values(self.matter_light_ratio());
        let temps: Vec<Option<f64>> = if sweep.temperatures.is_empty() {
            vec![None]
        } else {
            sweep.temperatures.iter().copied().map(Some).collect()
        };
        temps
            .iter()
            .flat_map(|&t| {
                values.iter().map(move |&v| Point {
                    swept: Some(v),
                    temperature_ratio: t,
                })
            })
            .collect()
    }

    /// Resolved medium segments at a point (vacuum filler not included).
    pub fn media_at(&self, point: Point) -> Result<Vec<MediumSegment>, ConfigError> {
        let circumference = self.circumference();
        let fixed: f64 = self
            .segments
            .iter()
            .filter_map(|s| match s.length {
                SegmentLength::Fixed(l) => Some(l),
                SegmentLength::Fill => None,
            })
            .sum();
        let slack = sagnac_core::model::TILING_TOLERANCE * circumference;
        if fixed > circumference + slack {
            return Err(invalid(
                "segment",
                format!("segment lengths sum to {fixed:e} m, more than the loop periphery {circumference:e} m"),
            ));
        }
        let variable = self.sweep.as_ref().map(|s| s.variable);
        let mut media = Vec::with_capacity(self.segments.len());
        for (i, spec) in self.segments.iter().enumerate() {
            let key = |k: &str| format!("segment[{i}].{k}");
            let length = match spec.length {
                SegmentLength::Fixed(l) => l,
                SegmentLength::Fill => {
                    let rest = circumference - fixed;
                    if !(rest > slack) {
                        return Err(invalid(key("length"), "nothing left of the periphery to fill"));
                    }
                    rest
                }
            };
            let density = match spec.loading {
                Loading::Density(n) => n,
                Loading::Opacity(a) => density_for_opacity(a, length, spec.gamma, &self.species, &self.probe)
                    .map_err(|source| ConfigError::Model { key: key("opacity"), source })?,
            };
            let mut control = spec.control;
            let mut eta = spec.eta;
            let mut t = point.temperature_ratio.unwrap_or(spec.temperature_ratio);
            if let (Some(v), Some(var)) = (point.swept, variable) {
                match var {
                    SweepVariable::Xi => control = Control::Xi(v),
                    SweepVariable::Eta => eta = v,
                    SweepVariable::TemperatureRatio => t = v,
                }
            }
            let rabi = match control {
                Control::Rabi(r) => r,
                Control::Xi(x) => control_rabi_for_xi(x, density, &self.species, &self.probe)
                    .map_err(|source| ConfigError::Model { key: key("xi"), source })?,
            };
            let field = ControlField::new(Complex64::new(rabi, 0.0), eta)
                .map_err(|source| ConfigError::Model { key: key("eta"), source })?;
            let medium = MediumSegment::new(length, density, spec.gamma, field, t)
                .map_err(|source| ConfigError::Model { key: key("length"), source })?;
            media.push(medium);
        }
        Ok(media)
    }

    pub fn geometry_at(&self, point: Point) -> Result<LoopGeometry, ConfigError> {
        let media = self.media_at(point)?;
        let geometry = if media.is_empty() {
            LoopGeometry::vacuum(self.radius)
        } else {
            LoopGeometry::with_vacuum_filler(self.radius, media)
        };
        geometry.map_err(|source| ConfigError::Model { key: "segment".into(), source })
    }

    /// Every field spelled out in SI units.
    pub fn to_raw(&self) -> RawConfig {
        let sweep = self.sweep.as_ref();
        RawConfig {
            mass: Some(format_si(self.species.mass(), Dimension::Mass)),
            dipole_moment: Some(format_si(self.species.dipole_moment(), Dimension::DipoleMoment)),
            cross_section: Some(format_si(self.species.cross_section(), Dimension::Area)),
            wavelength: Some(format_si(self.probe.wavelength(), Dimension::Length)),
            beam_area: Some(format_si(self.probe.beam_area(), Dimension::Area)),
            radius: Some(format_si(self.radius, Dimension::Length)),
            omega: Some(format_si(self.omega, Dimension::AngularRate)),
            mode: Some(self.mode.as_str().into()),
            absorption: Some(absorption_name(self.absorption).into()),
            quadrature_order: Some(self.quadrature_order as u64),
            tolerance: Some(self.tolerance),
            epsilon: Some(self.epsilon),
            kappa_budget: Some(self.kappa_budget),
            output: self.output.as_ref().map(|p| p.display().to_string()),
            sweep_variable: sweep.map(|s| s.variable.as_str().into()),
            sweep_scale: sweep.map(|s| match s.scale {
                SweepScale::Log => "log".into(),
                SweepScale::Linear => "linear".into(),
            }),
            sweep_min: sweep.map(|s| s.min.to_scalar()),
            sweep_max: sweep.map(|s| s.max.to_scalar()),
            sweep_count: sweep.map(|s| s.count as u64),
            sweep_temperatures: sweep
                .filter(|s| !s.temperatures.is_empty())
                .map(|s| s.temperatures.iter().map(|&t| Scalar::Number(t)).collect()),
            segments: (!self.segments.is_empty())
                .then(|| self.segments.iter().map(|s| s.to_raw()).collect()),
        }
    }

    pub fn echo(&self) -> String {
        self.to_raw().to_toml()
    }
}
