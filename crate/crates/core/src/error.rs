use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid {name} = {value:e}: must be {constraint}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    #[error(
        "negative momentum-transfer parameter eta = {0} is not supported: \
         the medium becomes opaque as soon as the group velocity crosses zero (eta >= 0 required)"
    )]
    NegativeEta(f64),

    #[error("segment lengths sum to {total:e} m but the loop periphery is {circumference:e} m")]
    SegmentsDoNotTile { total: f64, circumference: f64 },

    #[error("xi is infinite for an empty medium (tan^2 theta = 0)")]
    InfiniteXi,

    #[error("segment {index} has xi = 0 and eta = 0: group velocity vanishes and the phase is undefined")]
    DegenerateSegment { index: usize },

    #[error("enhancement ratio undefined at zero rotation rate")]
    ZeroRotation,

    #[error("fig3 absorption form divides by eta; eta = 0 has no Doppler absorption channel")]
    NoAbsorptionChannel,

    #[error(
        "coherence system singular for velocity class v = {velocity:e} m/s: \
         |Omega_c|^2 hits the two-photon Doppler resonance eta k_p (Omega R - v) (k_p (Omega R - v) + i gamma)"
    )]
    SingularCoherence { velocity: f64 },

    #[error("integration failed to converge in segment {segment} at z = {z:e} m")]
    NonConvergence { segment: usize, z: f64 },
}
