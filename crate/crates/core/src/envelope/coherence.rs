//! Stationary atomic coherences and the local probe dispersion they imply.
//!
//! For a velocity class `v` the slowly varying amplitudes of the excited
//! (`phi2`) and second ground (`phi3`) states obey, with `u = Omega R - v`
//! and `K = d/dz ln(probe)`,
//!
//! ```text
//! [ Omega_c                      -k_p u - i gamma - i (v_rec - u) K ] [phi3]   [-g sqrt(n) probe]
//! [ -eta k_p u - i (eta v_rec - u) K               conj(Omega_c)    ] [phi2] = [        0       ]
//! ```
//!
//! The `K` terms are the drift derivatives `i (v - Omega R) d/dz phi` moved
//! to the left, assuming the coherences follow the local probe. The probe
//! itself obeys `c K = i k_p Omega R - i g sqrt(n) <phi2 / probe>`.

use num_complex::Complex64;

use super::velocity::VelocityGrid;
use crate::constants::C;
use crate::model::{coupling_constant, AtomSpecies, MediumSegment, ProbeField};
use crate::{Error, Result};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// How the drift-derivative column enters the coherence solve.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum CoherenceOrder {
    /// Derivative column dropped.
    Zeroth,
    /// One fixed-point pass: the derivative column is fed the probe
    /// gradient of the zeroth-order solution.
    FirstIteration,
    /// Probe gradient and coherences solved jointly (secant iteration on
    /// the local dispersion relation).
    #[default]
    SelfConsistent,
}

/// Medium parameters entering the coherence equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MediumCoupling {
    /// `g sqrt(n)` (rad/s).
    pub g_sqrt_n: f64,
    pub control: Complex64,
    pub gamma: f64,
    pub eta: f64,
    pub k_p: f64,
    pub v_rec: f64,
}

impl MediumCoupling {
    /// `None` for vacuum.
    pub fn of(segment: &MediumSegment, species: &AtomSpecies, probe: &ProbeField) -> Option<Self> {
        if segment.is_vacuum() {
            return None;
        }
        Some(Self {
            g_sqrt_n: coupling_constant(species, probe) * libm::sqrt(segment.density()),
            control: segment.control().rabi_frequency(),
            gamma: segment.gamma(),
            eta: segment.eta(),
            k_p: probe.wavenumber(),
            v_rec: species.recoil_velocity(probe),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coherences {
    pub phi2: Complex64,
    pub phi3: Complex64,
}

/// Solves the 2x2 system for one velocity class.
///
/// `drift` is the probe's logarithmic derivative used for the derivative
/// column; pass zero for the zeroth-order solution.
pub fn stationary_coherences(
    coupling: &MediumCoupling,
    velocity: f64,
    probe: Complex64,
    omega_r: f64,
    drift: Complex64,
) -> Result<Coherences> {
    let [[m11, m12], [m21, m22]] = coherence_matrix(coupling, velocity, omega_r, drift);
    let det = m11 * m22 - m12 * m21;
    if !(det.norm() > 1e-12 * coupling.control.norm_sqr()) {
        return Err(Error::SingularCoherence { velocity });
    }
    let rhs = -coupling.g_sqrt_n * probe;
    Ok(Coherences {
        phi3: rhs * m22 / det,
        phi2: -m21 * rhs / det,
    })
}

/// Coefficient matrix acting on `[phi3, phi2]`.
pub fn coherence_matrix(
    coupling: &MediumCoupling,
    velocity: f64,
    omega_r: f64,
    drift: Complex64,
) -> [[Complex64; 2]; 2] {
    let u = omega_r - velocity;
    let kp_u = coupling.k_p * u;
    [
        [
            coupling.control,
            -kp_u - I * coupling.gamma - I * (coupling.v_rec - u) * drift,
        ],
        [
            -coupling.eta * kp_u - I * (coupling.eta * coupling.v_rec - u) * drift,
            coupling.control.conj(),
        ],
    ]
}

/// Right-hand side of the probe equation divided by the probe, for a
/// given drift: `(i k_p Omega R - i g sqrt(n) sum_v w_v phi2_v) / c`.
pub fn probe_gradient(
    coupling: Option<&MediumCoupling>,
    grid: &VelocityGrid,
    k_p: f64,
    omega_r: f64,
    drift: Complex64,
) -> Result<Complex64> {
    let free = I * k_p * omega_r / C;
    let Some(coupling) = coupling else {
        return Ok(free);
    };
    let one = Complex64::new(1.0, 0.0);
    // fixed summation order over the grid
    let mut phi2 = Complex64::new(0.0, 0.0);
    for (v, w) in grid.iter() {
        phi2 += w * stationary_coherences(coupling, v, one, omega_r, drift)?.phi2;
    }
    Ok(free - I * coupling.g_sqrt_n * phi2 / C)
}

/// Local logarithmic derivative of the probe, `K = d/dz ln(probe)`.
///
/// Returns `Ok(None)` when the self-consistent iteration fails to settle.
pub fn local_dispersion(
    coupling: Option<&MediumCoupling>,
    grid: &VelocityGrid,
    k_p: f64,
    omega_r: f64,
    order: CoherenceOrder,
) -> Result<Option<Complex64>> {
    let f = |k: Complex64| probe_gradient(coupling, grid, k_p, omega_r, k);
    let zero = Complex64::new(0.0, 0.0);
    let k0 = f(zero)?;
    match order {
        CoherenceOrder::Zeroth => return Ok(Some(k0)),
        CoherenceOrder::FirstIteration => return Ok(Some(f(k0)?)),
        CoherenceOrder::SelfConsistent => {}
    }
    if coupling.is_none() {
        return Ok(Some(k0));
    }

    // secant on G(K) = K - F(K), which is close to linear in K
    let (mut ka, mut ga) = (zero, -k0);
    let mut kb = k0;
    for _ in 0..60 {
        let gb = kb - f(kb)?;
        if gb == zero {
            return Ok(Some(kb));
        }
        let denom = gb - ga;
        if denom == zero {
            return Ok(Some(kb));
        }
        let next = kb - gb * (kb - ka) / denom;
        if (next - kb).norm() <= 1e-14 * next.norm() {
            return Ok(Some(next));
        }
        (ka, ga, kb) = (kb, gb, next);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn coupling() -> MediumCoupling {
        MediumCoupling {
            g_sqrt_n: 9.4e12,
            control: Complex64::new(1.4e7, 0.0),
            gamma: 6.1e7,
            eta: 1.0,
            k_p: 1.2566e7,
            v_rec: 0.0347,
        }
    }

    #[test]
    fn no_probe_no_coherence() {
        let c = stationary_coherences(&coupling(), 0.01, Complex64::new(0.0, 0.0), 1e-9, Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(c.phi2, Complex64::new(0.0, 0.0));
        assert_eq!(c.phi3.norm(), 0.0);
    }

    #[test]
    fn dark_state_at_rest() {
        let cp = coupling();
        let probe = Complex64::new(0.3, -0.2);
        let c = stationary_coherences(&cp, 0.0, probe, 0.0, Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(c.phi2.norm(), 0.0);
        let expected = -cp.g_sqrt_n * probe / cp.control;
        assert!((c.phi3 - expected).norm() <= 1e-15 * expected.norm());
    }

    #[test]
    fn residual_of_random_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let cp = MediumCoupling {
                g_sqrt_n: 10f64.powf(rng.gen_range(9.0..14.0)),
                control: Complex64::from_polar(10f64.powf(rng.gen_range(5.0..9.0)), rng.gen_range(-3.0..3.0)),
                gamma: 10f64.powf(rng.gen_range(6.0..9.0)),
                eta: rng.gen_range(0.0..2.0),
                k_p: 1.2566e7,
                v_rec: 0.0347,
            };
            let v = rng.gen_range(-1.0..1.0);
            let u = rng.gen_range(-1e-6..1e-6);
            let probe = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let c = stationary_coherences(&cp, v, probe, u, Complex64::new(0.0, 0.0)).unwrap();
            let m = coherence_matrix(&cp, v, u, Complex64::new(0.0, 0.0));
            let rhs = -cp.g_sqrt_n * probe;
            let r0 = m[0][0] * c.phi3 + m[0][1] * c.phi2 - rhs;
            let r1 = m[1][0] * c.phi3 + m[1][1] * c.phi2;
            let scale = rhs.norm();
            assert!(r0.norm() < 1e-12 * scale && r1.norm() < 1e-12 * scale);
        }
    }

    #[test]
    fn singular_resonance_detected() {
        // gamma -> 0 lets |Omega_c|^2 = eta k_p u (k_p u) be met exactly
        let mut cp = coupling();
        cp.gamma = 0.0;
        let u = cp.control.re / cp.k_p;
        let e = stationary_coherences(&cp, 0.0, Complex64::new(1.0, 0.0), u, Complex64::new(0.0, 0.0)).unwrap_err();
        assert!(matches!(e, Error::SingularCoherence { .. }));
    }

    #[test]
    fn vacuum_dispersion() {
        let grid = VelocityGrid::at_rest();
        let k = local_dispersion(None, &grid, 1.2566e7, 3e-6, CoherenceOrder::SelfConsistent)
            .unwrap()
            .unwrap();
        assert_eq!(k, I * 1.2566e7 * 3e-6 / C);
    }

    #[test]
    fn self_consistency_satisfied() {
        let cp = coupling();
        let grid = VelocityGrid::thermal(2.0, cp.v_rec, 32);
        let k = local_dispersion(Some(&cp), &grid, cp.k_p, 1e-9, CoherenceOrder::SelfConsistent)
            .unwrap()
            .unwrap();
        let f = probe_gradient(Some(&cp), &grid, cp.k_p, 1e-9, k).unwrap();
        assert!((f - k).norm() <= 1e-12 * k.norm());
    }
}
