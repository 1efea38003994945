//! Command-line front end for `sagnac-core`: TOML configuration with unit
//! strings, figure presets, CSV sweeps, design points and oracle checks.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // negated comparisons also reject NaN

pub mod cli;
pub mod config;
pub mod design;
pub mod presets;
pub mod sweep;
pub mod units;
