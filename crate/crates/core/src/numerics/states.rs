//! Initial states used across scenarios.

use super::{ComplexField1D, Grid1D, UnitsContext};
use crate::Result;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Gaussian packet whose density has standard deviation `sigma`, centred at `center`
/// with mean momentum `momentum`.
pub fn gaussian_packet(
    grid: Grid1D,
    center: f64,
    sigma: f64,
    momentum: f64,
    units: &UnitsContext,
) -> Result<ComplexField1D> {
    let amp = (2.0 * PI * sigma * sigma).powf(-0.25);
    ComplexField1D::from_fn(grid, |x| {
        let u = x - center;
        Complex64::from_polar(amp * (-u * u / (4.0 * sigma * sigma)).exp(), momentum * x / units.hbar)
    })
    .normalized()
}

/// Two Gaussians at `∓mu` moving towards each other with speed `velocity`:
///
/// `ψ ∝ e^{−(x+μ)²/2σ² + iMvx/ħ} + e^{−(x−μ)²/2σ² − iMvx/ħ}`.
///
/// Here `sigma` is the amplitude width, so each lobe's density has standard
/// deviation `σ/√2`.
pub fn collision_state(
    grid: Grid1D,
    mu: f64,
    sigma: f64,
    velocity: f64,
    units: &UnitsContext,
) -> Result<ComplexField1D> {
    let amp = (2.0 * PI * sigma * sigma).powf(-0.25) / 2f64.sqrt();
    let q = units.mass * velocity / units.hbar;
    ComplexField1D::from_fn(grid, |x| {
        let l = Complex64::from_polar(amp * (-(x + mu).powi(2) / (2.0 * sigma * sigma)).exp(), q * x);
        let r = Complex64::from_polar(amp * (-(x - mu).powi(2) / (2.0 * sigma * sigma)).exp(), -q * x);
        l + r
    })
    .normalized()
}

/// Normalized superposition `Σ c_j φ_j` of fields sharing one grid.
pub fn superpose(terms: &[(Complex64, &ComplexField1D)]) -> Result<ComplexField1D> {
    let grid = terms[0].1.grid;
    let mut values = vec![Complex64::new(0.0, 0.0); grid.len()];
    for (c, f) in terms {
        for (v, a) in values.iter_mut().zip(&f.values) {
            *v += c * a;
        }
    }
    ComplexField1D::new(grid, values)?.normalized()
}
