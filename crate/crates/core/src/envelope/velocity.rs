//! Thermal velocity classes by Gauss–Hermite quadrature.

use alloc::vec;
use alloc::vec::Vec;

/// pi^(-1/4)
const PI_M4: f64 = 0.751_125_544_464_942_5;
const SQRT_PI: f64 = 1.772_453_850_905_516;

/// Quadrature over a zero-mean Gaussian velocity distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct VelocityGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl VelocityGrid {
    /// Cold limit: every atom at rest.
    pub fn at_rest() -> Self {
        Self {
            nodes: vec![0.0],
            weights: vec![1.0],
        }
    }

    /// `order`-point rule for `<v^2> = temperature_ratio * v_rec^2`.
    ///
    /// A zero temperature ratio collapses to [`VelocityGrid::at_rest`].
    /// `order` is clamped to at least one.
    pub fn thermal(temperature_ratio: f64, v_rec: f64, order: usize) -> Self {
        if temperature_ratio == 0.0 {
            return Self::at_rest();
        }
        let (x, w) = gauss_hermite(order.max(1));
        // e^{-x^2} with x = v / (sqrt(2) sigma)
        let scale = libm::sqrt(2.0 * temperature_ratio) * v_rec;
        Self {
            nodes: x.iter().map(|x| x * scale).collect(),
            weights: w.iter().map(|w| w / SQRT_PI).collect(),
        }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }
}

/// Nodes (ascending) and weights of the physicists' Gauss–Hermite rule,
/// `int e^{-x^2} f(x) dx ~ sum w_i f(x_i)`.
///
/// Newton iteration on the orthonormal Hermite recurrence, which stays
/// in range for orders well past a few hundred.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    let half = n.div_ceil(2);
    let mut z = 0.0;
    for i in 0..half {
        z = match i {
            0 => libm::sqrt(2.0 * nf + 1.0) - 1.855_75 * libm::pow(2.0 * nf + 1.0, -0.166_67),
            1 => z - 1.14 * libm::pow(nf, 0.426) / z,
            2 => 1.86 * z - 0.86 * x[0],
            3 => 1.91 * z - 0.91 * x[1],
            _ => 2.0 * z - x[i - 2],
        };
        let mut pp = 0.0;
        for _ in 0..100 {
            let (p1, dp) = orthonormal_hermite(n, z);
            pp = dp;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        // derivative at the converged root
        let (_, dp) = orthonormal_hermite(n, z);
        if dp.is_finite() && dp != 0.0 {
            pp = dp;
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / (pp * pp);
        w[n - 1 - i] = w[i];
    }
    if n % 2 == 1 {
        x[half - 1] = 0.0;
    }
    x.reverse();
    w.reverse();
    (x, w)
}

/// Value of the normalised Hermite function of degree `n` (times the
/// `pi^{-1/4}` factor) and its derivative scaled as in the weight formula.
fn orthonormal_hermite(n: usize, z: f64) -> (f64, f64) {
    let mut p1 = PI_M4;
    let mut p2 = 0.0;
    for j in 0..n {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64;
        p1 = z * libm::sqrt(2.0 / (jf + 1.0)) * p2 - libm::sqrt(jf / (jf + 1.0)) * p3;
    }
    (p1, libm::sqrt(2.0 * n as f64) * p2)
}
