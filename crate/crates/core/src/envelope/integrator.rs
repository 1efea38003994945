//! Dormand–Prince 5(4) for a complex scalar `y' = f(z, y)`.

use num_complex::Complex64;

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// fifth-order weights minus embedded fourth-order weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

/// Result of one trial step.
#[derive(Debug, Clone, Copy)]
pub struct Step {
    pub y: Complex64,
    /// Local error estimate (absolute).
    pub error: Complex64,
}

/// One Dormand–Prince step from `(z, y)` with size `h`.
pub fn dopri5_step<F, E>(f: &mut F, z: f64, y: Complex64, h: f64) -> Result<Step, E>
where
    F: FnMut(f64, Complex64) -> Result<Complex64, E> + ?Sized,
{
    let k1 = f(z, y)?;
    let k2 = f(z + C2 * h, y + h * (A21 * k1))?;
    let k3 = f(z + C3 * h, y + h * (A31 * k1 + A32 * k2))?;
    let k4 = f(z + C4 * h, y + h * (A41 * k1 + A42 * k2 + A43 * k3))?;
    let k5 = f(
        z + C5 * h,
        y + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4),
    )?;
    let k6 = f(
        z + h,
        y + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5),
    )?;
    let y_new = y + h * (A71 * k1 + A73 * k3 + A74 * k4 + A75 * k5 + A76 * k6);
    let k7 = f(z + h, y_new)?;
    let error = h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);
    Ok(Step { y: y_new, error })
}

/// Step-size controller settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub relative: f64,
    pub absolute: f64,
}

impl Tolerance {
    /// Error normalised by the mixed tolerance; accept when `<= 1`.
    pub fn scaled_error(&self, step: &Step, y_old: Complex64) -> f64 {
        let scale = self.absolute + self.relative * y_old.norm().max(step.y.norm());
        step.error.norm() / scale
    }
}

/// Next step size from a scaled error (standard 1/5-power controller).
pub fn next_step(h: f64, scaled_error: f64) -> f64 {
    let factor = if scaled_error == 0.0 {
        5.0
    } else {
        (0.9 * libm::pow(scaled_error, -0.2)).clamp(0.2, 5.0)
    };
    h * factor
}
