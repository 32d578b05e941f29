use crate::numerics::spectral::Spectral;
use crate::numerics::{interp, ComplexField1D, Grid1D, UnitsContext};

/// Relative density below which the velocity ratio is regularized.
pub const NODE_EPSILON: f64 = 1e-12;
/// Velocity clamp in units of `(ħ/m)·k_Nyquist`.
const VELOCITY_CLAMP: f64 = 10.0;

/// Sampled Bohmian velocity field `v = (ħ/m) Im(∂xψ/ψ)` at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct VelocityFieldFrame {
    pub grid: Grid1D,
    pub v: Vec<f64>,
    pub time: f64,
}

impl VelocityFieldFrame {
    /// Periodic cubic interpolation at `x`.
    #[inline]
    pub fn at(&self, x: f64) -> f64 {
        interp::periodic_real(&self.v, self.grid.fractional_index(x))
    }
}

/// Reusable FFT plan for repeated velocity evaluations on one grid.
#[derive(Debug, Clone)]
pub struct VelocityEvaluator {
    spectral: Spectral,
    units: UnitsContext,
    grid: Grid1D,
}

impl VelocityEvaluator {
    pub fn new(grid: Grid1D, units: UnitsContext) -> Self {
        VelocityEvaluator { spectral: Spectral::new(grid), units, grid }
    }

    pub fn frame(&self, psi: &ComplexField1D, time: f64) -> VelocityFieldFrame {
        let (d_re, d_im) = self.spectral.derivative_parts(&psi.values);
        let max_density = psi.values.iter().map(|a| a.norm_sqr()).fold(0.0, f64::max);
        let eps = NODE_EPSILON * max_density;
        let hm = self.units.hbar_over_mass();
        let clamp = VELOCITY_CLAMP * hm * self.grid.k_nyquist();
        let v = psi
            .values
            .iter()
            .zip(d_re.iter().zip(&d_im))
            .map(|(a, (dr, di))| {
                let rho = a.norm_sqr();
                let flux = a.re * di - a.im * dr;
                let v = if rho < eps { hm * flux / (rho + eps) } else { hm * flux / rho };
                v.clamp(-clamp, clamp)
            })
            .collect();
        VelocityFieldFrame { grid: self.grid, v, time }
    }
}

pub fn velocity_field(psi: &ComplexField1D, units: &UnitsContext) -> VelocityFieldFrame {
    VelocityEvaluator::new(psi.grid, *units).frame(psi, 0.0)
}
