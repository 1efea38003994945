//! Slow-light hybrid Sagnac gyroscope model.
//!
//! Two independent routes to the rotational phase shift and the thermal
//! absorption of a ring interferometer whose beam path contains an EIT
//! medium:
//!
//! * closed-form expressions ([`phase`], [`absorption`], [`validity`],
//!   [`report`]) evaluated directly from the medium parameters;
//! * a numerical oracle ([`envelope`]) that integrates the stationary
//!   slowly-varying envelope equations across the loop, averaging the
//!   atomic coherences over thermal velocity classes.
//!
//! The crate is `no_std` (it needs `alloc`); file formats and the command
//! line front end live in `sagnac-cli`.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

#![allow(clippy::neg_cmp_op_on_partial_ord)] // negated comparisons also reject NaN

extern crate alloc;

pub mod absorption;
pub mod constants;
pub mod envelope;
mod error;
pub mod model;
pub mod phase;
pub mod report;
pub mod validity;

pub use error::{Error, Result};
pub use model::{
    AtomSpecies, ControlField, DerivedMediumQuantities, LoopGeometry, MediumSegment, ProbeField,
};
pub use num_complex::Complex64;
