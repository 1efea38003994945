//! Built-in configurations for the two figure families.

use crate::config::{ConfigError, RawConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Preset {
    /// Enhancement versus xi for a cold medium filling the loop.
    Fig2,
    /// Thermal absorption versus xi, 100 um trap, opacity 100.
    #[value(name = "fig3-left")]
    Fig3Left,
    /// Thermal absorption versus xi, 1 cm vapor cell, opacity 10.
    #[value(name = "fig3-right")]
    Fig3Right,
}

pub const ALL: [Preset; 3] = [Preset::Fig2, Preset::Fig3Left, Preset::Fig3Right];

const FIG2: &str = r#"
wavelength = "500 nm"
sweep_variable = "xi"
sweep_scale = "log"
sweep_min = 1e-3
sweep_max = "10 S"
sweep_count = 200

[[segment]]
length = "fill"
opacity = 100
eta = 1
xi = 1
temperature_ratio = 0
"#;

const FIG3_LEFT: &str = r#"
wavelength = "500 nm"
absorption = "fig3"
sweep_variable = "xi"
sweep_scale = "log"
sweep_min = 1e-2
sweep_max = 1e8
sweep_count = 201
sweep_temperatures = [1, 1e3, 1e6]

[[segment]]
length = "100 um"
opacity = 100
eta = 1
xi = 200
temperature_ratio = 1
"#;

const FIG3_RIGHT: &str = r#"
wavelength = "500 nm"
absorption = "fig3"
sweep_variable = "xi"
sweep_scale = "log"
sweep_min = 1e-2
sweep_max = 1e8
sweep_count = 201
sweep_temperatures = [1, 1e3, 1e6]

[[segment]]
length = "1 cm"
opacity = 10
eta = 1
xi = 1e5
temperature_ratio = 1
"#;

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig2 => "fig2",
            Preset::Fig3Left => "fig3-left",
            Preset::Fig3Right => "fig3-right",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Preset::Fig2 => "enhancement vs xi, eta = 1, T = 0, opacity 100 over the whole loop, 200 log points from 1e-3 to 10 S",
            Preset::Fig3Left => "kappa L vs xi, L = 100 um, opacity 100, T/T_rec in {1, 1e3, 1e6}",
            Preset::Fig3Right => "kappa L vs xi, L = 1 cm, opacity 10, T/T_rec in {1, 1e3, 1e6}",
        }
    }

    pub fn document(self) -> &'static str {
        match self {
            Preset::Fig2 => FIG2,
            Preset::Fig3Left => FIG3_LEFT,
            Preset::Fig3Right => FIG3_RIGHT,
        }
    }

    pub fn raw(self) -> Result<RawConfig, ConfigError> {
        RawConfig::from_toml(self.document())
    }
}
