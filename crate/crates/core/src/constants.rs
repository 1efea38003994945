//! CODATA 2018 values. Fixed at build time.

/// Speed of light in vacuum (m/s).
pub const C: f64 = 299_792_458.0;
/// Reduced Planck constant (J·s).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Vacuum permittivity (F/m).
pub const EPS0: f64 = 8.854_187_812_8e-12;
/// Atomic mass unit (kg).
pub const AMU: f64 = 1.660_539_066_60e-27;

/// The constants as one value, for code that wants to pass them around.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    pub c: f64,
    pub hbar: f64,
    pub eps0: f64,
    pub amu: f64,
}

pub const CODATA_2018: PhysicalConstants = PhysicalConstants {
    c: C,
    hbar: HBAR,
    eps0: EPS0,
    amu: AMU,
};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_positive() {
        let k = CODATA_2018;
        assert!(k.c > 0.0 && k.hbar > 0.0 && k.eps0 > 0.0 && k.amu > 0.0);
    }

    #[test]
    fn eps0_consistent_with_c_and_mu0() {
        // mu0 = 1/(eps0 c^2) ~ 4 pi 1e-7 to ~1e-9 relative
        let mu0 = 1.0 / (EPS0 * C * C);
        let four_pi_e7 = 4.0 * core::f64::consts::PI * 1e-7;
        assert!((mu0 / four_pi_e7 - 1.0).abs() < 1e-9);
    }
}
