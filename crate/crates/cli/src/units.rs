//! Unit-suffixed quantities such as `"500 nm"` or `"1e11 cm^-3"`.
//!
//! Conversion to SI happens once, here. Scale factors that are powers of
//! ten are applied by exact division or multiplication by an exactly
//! representable power, so `"500 nm"` becomes the same double as `5e-7`.

use sagnac_core::constants::AMU;

/// Elementary charge times the Bohr radius (C m).
const E_A0: f64 = 8.478_353_625_5e-30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Length,
    Area,
    Density,
    Mass,
    DipoleMoment,
    AngularRate,
}

#[derive(Debug, Clone, Copy)]
enum Scale {
    One,
    Mul(f64),
    Div(f64),
}

impl Scale {
    fn apply(self, x: f64) -> f64 {
        match self {
            Scale::One => x,
            Scale::Mul(f) => x * f,
            Scale::Div(f) => x / f,
        }
    }
}

impl Dimension {
    /// SI unit written by [`format_si`].
    pub fn si_unit(self) -> &'static str {
        match self {
            Dimension::Length => "m",
            Dimension::Area => "m^2",
            Dimension::Density => "m^-3",
            Dimension::Mass => "kg",
            Dimension::DipoleMoment => "C m",
            Dimension::AngularRate => "rad/s",
        }
    }

    /// Human-readable list used in error messages.
    pub fn accepted(self) -> &'static str {
        match self {
            Dimension::Length => "a length in m, cm, mm, um or nm",
            Dimension::Area => "an area in m^2, cm^2, mm^2 or um^2",
            Dimension::Density => "a number density in m^-3 or cm^-3",
            Dimension::Mass => "a mass in kg or amu",
            Dimension::DipoleMoment => "a dipole moment in C m or e a0",
            Dimension::AngularRate => "an angular rate in rad/s, deg/s or deg/h",
        }
    }

    fn scale(self, unit: &str) -> Option<Scale> {
        use Scale::*;
        let s = match (self, unit) {
            (Dimension::Length, "m") => One,
            (Dimension::Length, "cm") => Div(1e2),
            (Dimension::Length, "mm") => Div(1e3),
            (Dimension::Length, "um" | "μm" | "µm") => Div(1e6),
            (Dimension::Length, "nm") => Div(1e9),
            (Dimension::Area, "m^2" | "m2") => One,
            (Dimension::Area, "cm^2" | "cm2") => Div(1e4),
            (Dimension::Area, "mm^2" | "mm2") => Div(1e6),
            (Dimension::Area, "um^2" | "μm^2" | "µm^2" | "um2") => Div(1e12),
            (Dimension::Density, "m^-3" | "m-3") => One,
            (Dimension::Density, "cm^-3" | "cm-3") => Mul(1e6),
            (Dimension::Mass, "kg") => One,
            (Dimension::Mass, "amu" | "u" | "Da") => Mul(AMU),
            (Dimension::DipoleMoment, "C m" | "C*m" | "C·m") => One,
            (Dimension::DipoleMoment, "e a0" | "e*a0" | "ea0") => Mul(E_A0),
            (Dimension::AngularRate, "rad/s") => One,
            (Dimension::AngularRate, "deg/s") => Mul(core::f64::consts::PI / 180.0),
            (Dimension::AngularRate, "deg/h") => Mul(core::f64::consts::PI / 180.0 / 3600.0),
            _ => return None,
        };
        Some(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{key}: cannot read {text:?} as {expected}")]
pub struct UnitError {
    pub key: String,
    pub text: String,
    pub expected: &'static str,
}

/// Splits `"<number> <unit>"` and converts to SI.
pub fn parse_quantity(key: &str, text: &str, dim: Dimension) -> Result<f64, UnitError> {
    let err = || UnitError {
        key: key.to_string(),
        text: text.to_string(),
        expected: dim.accepted(),
    };
    let text_trim = text.trim();
    let (number, unit) = text_trim.split_once(char::is_whitespace).ok_or_else(err)?;
    let value: f64 = number.parse().map_err(|_| err())?;
    let unit = unit.split_whitespace().collect::<Vec<_>>().join(" ");
    let scale = dim.scale(&unit).ok_or_else(err)?;
    let si = scale.apply(value);
    if !si.is_finite() {
        return Err(err());
    }
    Ok(si)
}

/// Shortest round-tripping representation in SI units.
pub fn format_si(value: f64, dim: Dimension) -> String {
    format!("{value:e} {}", dim.si_unit())
}
