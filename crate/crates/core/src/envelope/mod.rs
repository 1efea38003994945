//! Numerical oracle: stationary envelope equations integrated around the
//! loop with thermal velocity-class averaging.

pub mod coherence;
pub mod compare;
pub mod integrator;
pub mod propagate;
pub mod velocity;

pub use coherence::{stationary_coherences, CoherenceOrder, Coherences, MediumCoupling};
pub use compare::{compare_to_analytic, CompareOptions, ComparisonReport, Verdict};
pub use propagate::{
    numeric_sagnac, propagate_probe, sagnac_phase_numeric, NumericSagnac, PropagationOptions,
    PropagationResult,
};
pub use velocity::VelocityGrid;
