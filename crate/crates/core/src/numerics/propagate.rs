use super::spectral::Spectral;
use super::{ComplexField1D, Grid1D, PotentialSpec, UnitsContext};
use crate::{Error, Result};
use num_complex::Complex64;

/// Largest admissible fraction of `|ψ̂|²` above `0.8·k_Nyquist`.
pub const SPECTRAL_TAIL_LIMIT: f64 = 1e-8;
/// Watchdog ceiling on `|ψ|²` near the grid edges.
pub const BOUNDARY_DENSITY_LIMIT: f64 = 1e-10;

/// Fraction of spectral weight carried by modes with `|k| > 0.8·k_Nyquist`.
pub fn spectral_tail_mass(psi: &ComplexField1D) -> f64 {
    let spectral = Spectral::new(psi.grid);
    let mut buf = psi.values.clone();
    spectral.forward.process(&mut buf);
    let cutoff = 0.8 * psi.grid.k_nyquist();
    let (mut tail, mut total) = (0.0, 0.0);
    for (b, k) in buf.iter().zip(&spectral.k) {
        let w = b.norm_sqr();
        total += w;
        if k.abs() > cutoff {
            tail += w;
        }
    }
    if total > 0.0 {
        tail / total
    } else {
        0.0
    }
}

/// Largest `|ψ|²` over the outer 1/32 of the grid on either side.
pub fn boundary_density(psi: &ComplexField1D) -> f64 {
    let n = psi.values.len();
    let strip = (n / 32).max(1);
    psi.values[..strip]
        .iter()
        .chain(&psi.values[n - strip..])
        .map(|a| a.norm_sqr())
        .fold(0.0, f64::max)
}

/// Strang split-step propagator `e^{−iVdt/2ħ} · F⁻¹ e^{−iħk²dt/2m} F · e^{−iVdt/2ħ}`.
///
/// Each call to [`step`](Self::step) applies the full symmetric sequence, so `n` single
/// steps are bit-identical to one `n`-step call.
#[derive(Debug, Clone)]
pub struct SplitStepPropagator {
    grid: Grid1D,
    dt: f64,
    half_potential: Vec<Complex64>,
    kinetic: Vec<Complex64>,
    spectral: Spectral,
}

impl SplitStepPropagator {
    pub fn new(grid: Grid1D, potential: &PotentialSpec, units: &UnitsContext, dt: f64) -> Result<Self> {
        if !dt.is_finite() {
            return Err(Error::invalid(format!("time step {dt} not finite")));
        }
        let v = potential.sample(&grid)?;
        let half_potential = v
            .iter()
            .map(|vx| Complex64::from_polar(1.0, -vx * dt / (2.0 * units.hbar)))
            .collect();
        let spectral = Spectral::new(grid);
        let n = grid.len() as f64;
        let kinetic = spectral
            .k
            .iter()
            .map(|k| Complex64::from_polar(1.0 / n, -units.hbar * k * k * dt / (2.0 * units.mass)))
            .collect();
        Ok(SplitStepPropagator { grid, dt, half_potential, kinetic, spectral })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn grid(&self) -> Grid1D {
        self.grid
    }

    pub fn spectral(&self) -> &Spectral {
        &self.spectral
    }

    pub fn step(&self, values: &mut [Complex64]) {
        for (a, p) in values.iter_mut().zip(&self.half_potential) {
            *a *= p;
        }
        self.spectral.forward.process(values);
        for (a, p) in values.iter_mut().zip(&self.kinetic) {
            *a *= p;
        }
        self.spectral.inverse.process(values);
        for (a, p) in values.iter_mut().zip(&self.half_potential) {
            *a *= p;
        }
    }

    pub fn advance(&self, psi: &mut ComplexField1D, steps: usize) {
        for _ in 0..steps {
            self.step(&mut psi.values);
        }
    }
}

/// Propagates `psi` through `steps` Strang steps of length `dt`.
pub fn split_step_propagate(
    psi: &ComplexField1D,
    potential: &PotentialSpec,
    units: &UnitsContext,
    dt: f64,
    steps: usize,
) -> Result<ComplexField1D> {
    psi.ensure_finite("initial field")?;
    let tail = spectral_tail_mass(psi);
    if tail > SPECTRAL_TAIL_LIMIT {
        return Err(Error::Aliasing { tail_mass: tail });
    }
    let prop = SplitStepPropagator::new(psi.grid, potential, units, dt)?;
    let mut out = psi.clone();
    prop.advance(&mut out, steps);
    out.ensure_finite("after split-step propagation")?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::states::gaussian_packet;
    use crate::numerics::{expectation, spreads, Observable};

    fn free_width(sigma: f64, t: f64) -> f64 {
        sigma * (1.0 + (t / (2.0 * sigma * sigma)).powi(2)).sqrt()
    }

    #[test]
    fn free_gaussian_width_matches_closed_form() {
        let u = UnitsContext::natural();
        let g = Grid1D::new(-30.0, 30.0, 1024).unwrap();
        let psi = gaussian_packet(g, 0.0, 1.0, 0.0, &u).unwrap();
        let out = split_step_propagate(&psi, &PotentialSpec::Free, &u, 2e-3, 1000).unwrap();
        let (dx, _) = spreads(&out, &u).unwrap();
        // Free evolution has no splitting error: the kinetic factor is exact.
        assert!((dx - free_width(1.0, 2.0)).abs() < 1e-6, "{dx}");
    }

    #[test]
    fn constant_field_is_stationary() {
        let u = UnitsContext::natural();
        let g = Grid1D::new(0.0, 1.0, 64).unwrap();
        let psi = ComplexField1D::from_fn(g, |_| Complex64::new(1.0, 0.0));
        let out = split_step_propagate(&psi, &PotentialSpec::Free, &u, 0.37, 13).unwrap();
        assert!(out.sup_distance(&psi) < 1e-12);
    }

    #[test]
    fn norm_conserved_in_harmonic_trap() {
        let u = UnitsContext::natural();
        let g = Grid1D::new(-20.0, 20.0, 512).unwrap();
        let psi = gaussian_packet(g, 2.0, 0.8, 1.0, &u).unwrap();
        let out = split_step_propagate(&psi, &PotentialSpec::Harmonic { k: 1.0 }, &u, 1e-3, 10_000).unwrap();
        assert!((out.norm_sqr() - 1.0).abs() < 1e-8);
        let x = expectation(&out, Observable::Position, &u).unwrap();
        assert!((x - 2.0 * 10f64.cos() - 1.0 * 10f64.sin()).abs() < 1e-4, "{x}");
    }

    #[test]
    fn time_reversal() {
        let u = UnitsContext::natural();
        let g = Grid1D::new(-20.0, 20.0, 256).unwrap();
        let psi = gaussian_packet(g, -1.0, 1.0, 2.0, &u).unwrap();
        let v = PotentialSpec::Linear { slope: 0.5 };
        let fwd = split_step_propagate(&psi, &v, &u, 0.01, 50).unwrap();
        let back = split_step_propagate(&fwd, &v, &u, -0.01, 50).unwrap();
        assert!(back.sup_distance(&psi) < 1e-9);
    }

    #[test]
    fn aliasing_is_rejected() {
        let u = UnitsContext::natural();
        let g = Grid1D::new(-4.0, 4.0, 64).unwrap();
        let k = 0.95 * g.k_nyquist();
        let psi = gaussian_packet(g, 0.0, 1.0, k, &u).unwrap();
        assert!(matches!(
            split_step_propagate(&psi, &PotentialSpec::Free, &u, 0.01, 1),
            Err(Error::Aliasing { .. })
        ));
    }

    #[test]
    fn non_finite_is_rejected() {
        let u = UnitsContext::natural();
        let g = Grid1D::new(-4.0, 4.0, 64).unwrap();
        let mut psi = gaussian_packet(g, 0.0, 1.0, 0.0, &u).unwrap();
        psi.values[3] = Complex64::new(f64::NAN, 0.0);
        assert!(matches!(
            split_step_propagate(&psi, &PotentialSpec::Free, &u, 0.01, 1),
            Err(Error::NumericOverflow { .. })
        ));
    }

    #[test]
    fn strang_error_is_second_order() {
        // Harmonic trap: the splitting error is nonzero; compare against a fine reference.
        let u = UnitsContext::natural();
        let g = Grid1D::new(-16.0, 16.0, 512).unwrap();
        let v = PotentialSpec::Harmonic { k: 1.0 };
        let psi = gaussian_packet(g, 1.0, 0.7, 0.0, &u).unwrap();
        let t = 1.0;
        let reference = split_step_propagate(&psi, &v, &u, t / 6400.0, 6400).unwrap();
        let errs: Vec<f64> = [1e-2, 5e-3, 2.5e-3]
            .iter()
            .map(|&dt| {
                let steps = (t / dt).round() as usize;
                split_step_propagate(&psi, &v, &u, dt, steps).unwrap().sup_distance(&reference)
            })
            .collect();
        for w in errs.windows(2) {
            let ratio = w[0] / w[1];
            assert!((ratio - 4.0).abs() < 0.4, "ratio {ratio} ({errs:?})");
        }
    }

    #[test]
    fn boundary_watchdog_sees_edge_mass() {
        let u = UnitsContext::natural();
        let g = Grid1D::new(-10.0, 10.0, 256).unwrap();
        let centred = gaussian_packet(g, 0.0, 0.5, 0.0, &u).unwrap();
        let edge = gaussian_packet(g, 9.0, 0.5, 0.0, &u).unwrap();
        assert!(boundary_density(&centred) < BOUNDARY_DENSITY_LIMIT);
        assert!(boundary_density(&edge) > BOUNDARY_DENSITY_LIMIT);
    }
}
