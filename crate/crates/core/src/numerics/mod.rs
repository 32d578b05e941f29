//! Discretization substrate: uniform periodic grids, sampled fields, split-step
//! propagation, densities, inverse-CDF sampling and expectation values.
//!
//! Everything here runs in whatever units the supplied [`UnitsContext`] declares; the
//! dynamical modules use natural units (ħ = m = 1) throughout.

mod field;
mod grid;
pub mod interp;
mod potential;
mod propagate;
mod sampling;
pub mod spectral;
pub mod states;

pub use field::{ComplexField1D, JointField2D, RealField1D};
pub use grid::Grid1D;
pub use potential::{PotentialSpec, UnitMode, UnitsContext, HBAR_SI, K_BOLTZMANN};
pub use propagate::{
    boundary_density, spectral_tail_mass, split_step_propagate, SplitStepPropagator,
    BOUNDARY_DENSITY_LIMIT, SPECTRAL_TAIL_LIMIT,
};
pub use sampling::{sample_from_density, DensityCdf};

use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    Position,
    Momentum,
}

pub fn probability_density(psi: &ComplexField1D) -> RealField1D {
    psi.density()
}

/// ⟨x̂⟩ by quadrature or ⟨p̂⟩ through the spectral derivative `−iħ∂x`.
pub fn expectation(psi: &ComplexField1D, observable: Observable, units: &UnitsContext) -> Result<f64> {
    psi.ensure_finite("expectation")?;
    let dx = psi.grid.dx();
    let norm = psi.norm_sqr();
    let value = match observable {
        Observable::Position => {
            psi.values
                .iter()
                .enumerate()
                .map(|(i, a)| psi.grid.x(i) * a.norm_sqr())
                .sum::<f64>()
                * dx
        }
        Observable::Momentum => {
            let d = spectral::Spectral::new(psi.grid).derivative(&psi.values);
            // ⟨ψ| −iħ∂x |ψ⟩ = ħ Σ Im(ψ* ∂xψ) dx for a normalizable state
            units.hbar
                * psi
                    .values
                    .iter()
                    .zip(&d)
                    .map(|(a, b)| (a.conj() * b).im)
                    .sum::<f64>()
                * dx
        }
    };
    Ok(value / norm)
}

/// Standard deviations of position and momentum.
pub fn spreads(psi: &ComplexField1D, units: &UnitsContext) -> Result<(f64, f64)> {
    let mean_x = expectation(psi, Observable::Position, units)?;
    let mean_p = expectation(psi, Observable::Momentum, units)?;
    let dx = psi.grid.dx();
    let norm = psi.norm_sqr();
    let var_x = psi
        .values
        .iter()
        .enumerate()
        .map(|(i, a)| (psi.grid.x(i) - mean_x).powi(2) * a.norm_sqr())
        .sum::<f64>()
        * dx
        / norm;
    // ⟨p²⟩ = ħ² ∫ |∂xψ|² dx
    let d = spectral::Spectral::new(psi.grid).derivative(&psi.values);
    let p2 = units.hbar * units.hbar * d.iter().map(|b| b.norm_sqr()).sum::<f64>() * dx / norm;
    Ok((var_x.sqrt(), (p2 - mean_p * mean_p).max(0.0).sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::states::gaussian_packet;
    use num_complex::Complex64;

    fn grid() -> Grid1D {
        Grid1D::new(-20.0, 20.0, 512).unwrap()
    }

    #[test]
    fn coherent_state_means() {
        let u = UnitsContext::natural();
        let psi = gaussian_packet(grid(), 1.5, 1.0, 0.7, &u).unwrap();
        let x = expectation(&psi, Observable::Position, &u).unwrap();
        let p = expectation(&psi, Observable::Momentum, &u).unwrap();
        assert!((x - 1.5).abs() < 1e-8, "{x}");
        assert!((p - 0.7).abs() < 1e-8, "{p}");
    }

    #[test]
    fn boost_shifts_momentum() {
        let u = UnitsContext::natural();
        let psi = gaussian_packet(grid(), 0.0, 1.2, 0.3, &u).unwrap();
        let q = 0.9;
        let boosted = psi.map_indexed(|x, a| a * Complex64::from_polar(1.0, q * x / u.hbar));
        let p0 = expectation(&psi, Observable::Momentum, &u).unwrap();
        let p1 = expectation(&boosted, Observable::Momentum, &u).unwrap();
        assert!((p1 - p0 - q).abs() < 1e-8);
    }

    #[test]
    fn symmetric_pair_has_zero_means() {
        let u = UnitsContext::natural();
        let psi = states::collision_state(grid(), 5.0, 1.0, 2.0, &u).unwrap();
        assert!(expectation(&psi, Observable::Position, &u).unwrap().abs() < 1e-10);
        assert!(expectation(&psi, Observable::Momentum, &u).unwrap().abs() < 1e-10);
    }

    #[test]
    fn gaussian_density_peak() {
        let u = UnitsContext::natural();
        // Amplitude width 1 → density standard deviation 1 in this constructor.
        let g = Grid1D::new(-16.0, 16.0, 1024).unwrap();
        let psi = gaussian_packet(g, 0.0, 1.0, 0.0, &u).unwrap();
        let rho = probability_density(&psi);
        let peak = rho.values.iter().cloned().fold(0.0, f64::max);
        assert!((peak - 1.0 / (2.0 * std::f64::consts::PI).sqrt()).abs() < 1e-8);
        assert!((rho.integral() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn separated_lobes_hold_half_mass_each() {
        let u = UnitsContext::natural();
        let psi = states::collision_state(grid(), 8.0, 1.0, 0.0, &u).unwrap();
        let rho = probability_density(&psi);
        let left: f64 = rho
            .values
            .iter()
            .enumerate()
            .filter(|(i, _)| rho.grid.x(*i) < 0.0)
            .map(|(_, v)| v)
            .sum::<f64>()
            * rho.grid.dx();
        assert!((left - 0.5).abs() < 1e-6, "{left}");
    }
}
