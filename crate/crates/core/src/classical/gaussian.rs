use super::params::{LambdaConvention, QmuplParams};
use crate::numerics::{ComplexField1D, Grid1D};
use crate::{Error, Result};
use num_complex::Complex64;

/// Points per position spread below which a rendered state is refused.
pub const MIN_POINTS_PER_WIDTH: f64 = 16.0;

/// Gaussian the centre of mass settles into under frequent weak collapses:
/// `ψ(x) = (s/π)^{1/4} exp(−(z/2)(x−x̄)² + i p̄ x/ħ)` with `z = (1+i)s`,
/// `s = √(ΛM/ħ)`.
///
/// The global phase `A(t)` has no prescribed dynamics; it is stored and applied but
/// nothing observable depends on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianMeanState {
    pub x_bar: f64,
    pub p_bar: f64,
    pub s: f64,
    pub z: Complex64,
    pub phase: f64,
    pub mass: f64,
    pub hbar: f64,
}

impl GaussianMeanState {
    pub fn asymptotic(params: &QmuplParams, x_bar: f64, p_bar: f64) -> Self {
        let lambda = params.strength(LambdaConvention::Direct);
        let s = (lambda * params.mass() / params.hbar()).sqrt();
        GaussianMeanState {
            x_bar,
            p_bar,
            s,
            z: Complex64::new(s, s),
            phase: 0.0,
            mass: params.mass(),
            hbar: params.hbar(),
        }
    }

    /// Same width, new means.
    pub fn moved(&self, x_bar: f64, p_bar: f64) -> Self {
        GaussianMeanState { x_bar, p_bar, ..*self }
    }

    /// `ω = 2ħs/M = 2√(ħΛ/M)`.
    pub fn omega(&self) -> f64 {
        2.0 * self.hbar * self.s / self.mass
    }

    /// `(Δq, Δp) = (√(ħ/Mω), √(ħMω/2))`.
    pub fn spreads(&self) -> (f64, f64) {
        let w = self.omega();
        ((self.hbar / (self.mass * w)).sqrt(), (self.hbar * self.mass * w / 2.0).sqrt())
    }

    /// Contraction rate `ħs/M` of offsets from the mean in the velocity field.
    pub fn contraction_rate(&self) -> f64 {
        self.hbar * self.s / self.mass
    }

    /// Closed-form guidance velocity `p̄/M − (ħs/M)(x − x̄)`.
    pub fn velocity(&self, x: f64) -> f64 {
        self.p_bar / self.mass - self.contraction_rate() * (x - self.x_bar)
    }

    pub fn amplitude(&self, x: f64) -> Complex64 {
        let d = x - self.x_bar;
        let norm = (self.s / std::f64::consts::PI).powf(0.25);
        let exponent = -0.5 * self.z * d * d + Complex64::new(0.0, self.p_bar * x / self.hbar + self.phase);
        norm * exponent.exp()
    }

    /// Samples the state on `grid`. The grid must resolve `Δq` with at least
    /// [`MIN_POINTS_PER_WIDTH`] points and hold `x̄ ± 10Δq`.
    pub fn render(&self, grid: Grid1D) -> Result<ComplexField1D> {
        let (dq, dp) = self.spreads();
        if dq / grid.dx() < MIN_POINTS_PER_WIDTH {
            return Err(Error::GridResolution { width: dq, dx: grid.dx() });
        }
        if self.x_bar - 10.0 * dq < grid.x_min() || self.x_bar + 10.0 * dq > grid.x_max() {
            return Err(Error::invalid(format!(
                "grid [{}, {}) does not hold the state around {} (Δq = {dq:e})",
                grid.x_min(),
                grid.x_max(),
                self.x_bar
            )));
        }
        // the chirp widens the momentum support to |p − p̄| ≲ 10Δp
        let k_max = (self.p_bar.abs() + 10.0 * dp) / self.hbar;
        if k_max > grid.k_nyquist() {
            return Err(Error::GridResolution { width: self.hbar / k_max, dx: grid.dx() });
        }
        Ok(ComplexField1D::from_fn(grid, |x| self.amplitude(x)))
    }
}
