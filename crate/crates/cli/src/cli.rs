//! Argument parsing and subcommand dispatch.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use sagnac_core::envelope::numeric_sagnac;
use sagnac_core::phase::sagnac_phase_matter;

use crate::config::{Mode, Point, RawConfig, RunConfig};
use crate::design::design_point;
use crate::presets::{self, Preset};
use crate::sweep::{self, OracleOutcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AbsorptionArg {
    General,
    Fig3,
}

#[derive(Debug, Parser)]
#[command(name = "sagnac", version, about = "Slow-light hybrid Sagnac gyroscope model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// TOML configuration file, layered over the preset if both are given.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub preset: Option<Preset>,
    /// Write results here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,
    #[arg(long, global = true, value_enum)]
    pub absorption: Option<AbsorptionArg>,
    /// Gauss-Hermite order for thermal averaging.
    #[arg(long, global = true)]
    pub quadrature_order: Option<u64>,
    /// Relative tolerance of the envelope integrator.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form (and optionally numeric) Sagnac report as key=value lines.
    Phase,
    /// Parameter sweep as CSV.
    Sweep,
    /// Smallest group velocity allowed by absorption and collisions.
    Design {
        /// Allowed kappa L (overrides kappa_budget).
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Compare the numeric oracle against the closed forms; nonzero exit on failure.
    OracleCheck,
    /// List built-in presets, or print one with --preset.
    Presets,
    /// Print the resolved configuration in SI units.
    Echo,
}

impl Cli {
    fn flag_layer(&self) -> RawConfig {
        RawConfig {
            output: self.output.as_ref().map(|p| p.display().to_string()),
            mode: self.mode.map(|m| m.as_str().into()),
            absorption: self.absorption.map(|a| {
                match a {
                    AbsorptionArg::General => "general",
                    AbsorptionArg::Fig3 => "fig3",
                }
                .into()
            }),
            quadrature_order: self.quadrature_order,
            tolerance: self.tolerance,
            ..RawConfig::default()
        }
    }

    /// Preset, then config file, then flags.
    pub fn load(&self) -> anyhow::Result<RunConfig> {
        let mut raw = match self.preset {
            Some(p) => p.raw()?,
            None => RawConfig::default(),
        };
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let file = RawConfig::from_toml(&text).with_context(|| format!("in {}", path.display()))?;
            raw = raw.overlay(file);
        }
        raw = raw.overlay(self.flag_layer());
        Ok(RunConfig::from_raw(&raw)?)
    }
}

fn sink(config: &RunConfig) -> anyhow::Result<Box<dyn Write>> {
    Ok(match &config.output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn line(out: &mut dyn Write, key: &str, value: f64) -> io::Result<()> {
    writeln!(out, "{key}={value:.8e}")
}

fn phase(config: &RunConfig, out: &mut dyn Write) -> anyhow::Result<()> {
    let row = sweep::evaluate(config, Point::default(), config.mode == Mode::Both)?;
    let r = &row.report;
    if config.mode.closed_form() {
        let geometry = config.geometry_at(Point::default())?;
        line(out, "phase_optical_rad", r.phase_optical)?;
        line(out, "phase_hybrid_rad", r.phase_hybrid)?;
        line(out, "phase_matter_rad", sagnac_phase_matter(&geometry, config.omega, &config.species))?;
        line(out, "enhancement", r.enhancement.unwrap_or(f64::NAN))?;
        line(out, "kappa_L", r.kappa_l_total)?;
        line(out, "xi", row.xi)?;
        line(out, "vgr_over_vrec", row.vgr_over_vrec)?;
        writeln!(out, "valid={}", r.validity.all_pass())?;
        for (name, ok) in r.validity.as_array() {
            writeln!(out, "{name}={ok}")?;
        }
    }
    match config.mode {
        Mode::Analytic => {}
        Mode::Oracle => {
            let geometry = config.geometry_at(Point::default())?;
            let options = sweep::compare_options(config).propagation;
            let n = numeric_sagnac(&geometry, config.omega, &config.probe, &config.species, &options)?;
            line(out, "phase_numeric_rad", n.phase)?;
            line(out, "kappa_L_numeric", -n.forward.log_amplitude)?;
            line(out, "numeric_error_estimate", n.error_estimate())?;
        }
        Mode::Both => match &row.oracle {
            Some(OracleOutcome::Compared(c)) => {
                line(out, "phase_numeric_rad", c.phase_numeric)?;
                line(out, "kappa_L_numeric", c.kappa_l_numeric)?;
                line(out, "phase_deviation", c.phase_deviation)?;
                line(out, "absorption_deviation", c.absorption_deviation)?;
                line(out, "numeric_error_estimate", c.numeric_error_estimate)?;
                writeln!(out, "oracle_verdict={}", c.verdict.as_str())?;
            }
            Some(OracleOutcome::Error(e)) => writeln!(out, "oracle_error={e}")?,
            None => {}
        },
    }
    Ok(())
}

fn has_temperatures(config: &RunConfig) -> bool {
    config.sweep.as_ref().is_some_and(|s| !s.temperatures.is_empty())
}

fn oracle_check(config: &RunConfig, out: &mut dyn Write) -> anyhow::Result<bool> {
    let rows = sweep::run(config, true)?;
    sweep::write_csv(&mut *out, &rows, true, has_temperatures(config))?;
    let mut ok = true;
    for (i, row) in rows.iter().enumerate() {
        if row.oracle_ok() {
            continue;
        }
        ok = false;
        let what = match &row.oracle {
            Some(OracleOutcome::Compared(c)) => format!(
                "phase deviation {:.3e} (tolerance {:.1e}), absorption deviation {:.3e} (tolerance {:.1e})",
                c.phase_deviation,
                sagnac_core::envelope::compare::DEFAULT_PHASE_TOLERANCE,
                c.absorption_deviation,
                sagnac_core::envelope::compare::DEFAULT_ABSORPTION_TOLERANCE,
            ),
            Some(OracleOutcome::Error(e)) => format!("propagation failed: {e}"),
            None => unreachable!("oracle rows always carry an outcome"),
        };
        eprintln!("row {i} (swept = {:e}, xi = {:e}): FAIL {what}", row.swept, row.xi);
    }
    Ok(ok)
}

pub fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    if let Command::Presets = cli.command {
        let mut out = io::stdout().lock();
        match cli.preset {
            Some(p) => write!(out, "{}", p.document().trim_start())?,
            None => {
                for p in presets::ALL {
                    writeln!(out, "{:<11} {}", p.name(), p.description())?;
                }
            }
        }
        return Ok(ExitCode::SUCCESS);
    }

    let config = cli.load()?;
    let mut out = sink(&config)?;
    let code = match &cli.command {
        Command::Presets => unreachable!(),
        Command::Echo => {
            write!(out, "{}", config.echo())?;
            ExitCode::SUCCESS
        }
        Command::Phase => {
            phase(&config, &mut *out)?;
            ExitCode::SUCCESS
        }
        Command::Sweep => {
            if config.sweep.is_none() {
                bail!("sweep_variable: the configuration defines no sweep");
            }
            let oracle = config.mode.numeric();
            let rows = sweep::run(&config, oracle)?;
            sweep::write_csv(&mut *out, &rows, oracle, has_temperatures(&config))?;
            ExitCode::SUCCESS
        }
        Command::Design { budget } => {
            let budget = budget.unwrap_or(config.kappa_budget);
            if !(budget > 0.0) {
                bail!("--budget must be > 0 (got {budget:e})");
            }
            let report = design_point(&config, budget)?;
            write!(out, "{report}")?;
            if report.feasible {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Command::OracleCheck => {
            if oracle_check(&config, &mut *out)? {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    };
    out.flush()?;
    Ok(code)
}
