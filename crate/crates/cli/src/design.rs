//! Design point: the slowest light a segment supports under the absorption
//! budget and the velocity-changing-collision bound.

use std::fmt;

use sagnac_core::absorption::{collision_limited_vgr_min, min_xi_for_absorption};
use sagnac_core::phase::uniform_enhancement;
use sagnac_core::MediumSegment;

use crate::config::{ConfigError, Point, RunConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Binding {
    Absorption,
    Collisions,
}

impl Binding {
    pub fn as_str(self) -> &'static str {
        match self {
            Binding::Absorption => "absorption",
            Binding::Collisions => "collisions",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignReport {
    pub kappa_budget: f64,
    pub eta: f64,
    pub matter_light_ratio: f64,
    pub xi_min: f64,
    /// `xi_min + eta`
    pub vgr_over_vrec_min_absorption: f64,
    /// `L n sigma sqrt(T / T_rec)`
    pub vgr_over_vrec_min_collisions: f64,
    pub binding: Binding,
    /// False when the collision bound exceeds `c / v_rec`.
    pub feasible: bool,
    pub xi_optimum: f64,
    pub vgr_over_vrec_optimum: f64,
    /// `(xi + eta S) / (xi + eta)` at the optimum; NaN when infeasible.
    pub enhancement: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum DesignError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("design needs exactly one [[segment]] (got {0})")]
    SegmentCount(usize),
    #[error(transparent)]
    Model(#[from] sagnac_core::Error),
}

pub fn design_point(config: &RunConfig, kappa_budget: f64) -> Result<DesignReport, DesignError> {
    let media = config.media_at(Point::default())?;
    let [segment]: [MediumSegment; 1] = media
        .try_into()
        .map_err(|m: Vec<MediumSegment>| DesignError::SegmentCount(m.len()))?;
    let eta = segment.eta();
    let s = config.matter_light_ratio();
    let xi_min = min_xi_for_absorption(&segment, &config.probe, &config.species, kappa_budget, config.absorption)?;
    let absorption = xi_min + eta;
    let collisions = collision_limited_vgr_min(&segment, &config.species);
    let binding = if collisions > absorption {
        Binding::Collisions
    } else {
        Binding::Absorption
    };
    let vgr_opt = absorption.max(collisions);
    let feasible = collisions <= s;
    let xi_optimum = vgr_opt - eta;
    let enhancement = if feasible {
        uniform_enhancement(xi_optimum, eta, s)?
    } else {
        f64::NAN
    };
    Ok(DesignReport {
        kappa_budget,
        eta,
        matter_light_ratio: s,
        xi_min,
        vgr_over_vrec_min_absorption: absorption,
        vgr_over_vrec_min_collisions: collisions,
        binding,
        feasible,
        xi_optimum,
        vgr_over_vrec_optimum: vgr_opt,
        enhancement,
    })
}

impl fmt::Display for DesignReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kappa_budget={:.8e}", self.kappa_budget)?;
        writeln!(f, "eta={:.8e}", self.eta)?;
        writeln!(f, "matter_light_ratio={:.8e}", self.matter_light_ratio)?;
        writeln!(f, "xi_min={:.8e}", self.xi_min)?;
        writeln!(f, "vgr_over_vrec_min_absorption={:.8e}", self.vgr_over_vrec_min_absorption)?;
        writeln!(f, "vgr_over_vrec_min_collisions={:.8e}", self.vgr_over_vrec_min_collisions)?;
        writeln!(f, "binding={}", self.binding.as_str())?;
        writeln!(f, "feasible={}", self.feasible)?;
        if !self.feasible {
            writeln!(
                f,
                "infeasible=collision bound v_gr/v_rec = {:.8e} exceeds c/v_rec = {:.8e}",
                self.vgr_over_vrec_min_collisions, self.matter_light_ratio
            )?;
        }
        writeln!(f, "xi_optimum={:.8e}", self.xi_optimum)?;
        writeln!(f, "vgr_over_vrec_optimum={:.8e}", self.vgr_over_vrec_optimum)?;
        writeln!(f, "enhancement={:.8e}", self.enhancement)
    }
}
