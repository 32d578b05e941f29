use super::params::GrwParams;
use crate::bohmian::DensityMatrix1D;
use crate::numerics::spectral::Spectral;
use crate::numerics::{PotentialSpec, UnitsContext};
use crate::{Error, Result};
use num_complex::Complex64;

/// Trace drift tolerated per evolution before the step is halved.
const TRACE_DRIFT_LIMIT: f64 = 1e-6;
/// Step as a fraction of the inverse spectral radius of the generator.
const STABILITY_FRACTION: f64 = 1.0;
const MAX_HALVINGS: usize = 6;

/// Which parts of the generator are switched on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Dynamics {
    #[default]
    Full,
    /// `H = 0`: only the collapse term acts.
    CollapseOnly,
}

/// Generator `dρ/dt = −(i/ħ)[H, ρ] + Λ(G∘ρ − ρ)` with `G(x, x′) = e^{−(x−x′)²/4r_C²}`,
/// the closed form of `∫dz L(z)ρL(z)` on the line.
#[derive(Debug, Clone)]
pub struct MasterEquation {
    dim: usize,
    dx: f64,
    rate: f64,
    units: UnitsContext,
    dynamics: Dynamics,
    potential: Vec<f64>,
    /// `ħ²k²/2M / n`, with the inverse-FFT scale folded in.
    kinetic: Vec<f64>,
    gaussian: Vec<f64>,
    spectral: Spectral,
    spectral_radius: f64,
}

impl MasterEquation {
    pub fn new(
        grid: crate::Grid1D,
        potential: &PotentialSpec,
        units: &UnitsContext,
        rate: f64,
        r_c: f64,
        dynamics: Dynamics,
    ) -> Result<Self> {
        if !(rate >= 0.0 && rate.is_finite() && r_c > 0.0) {
            return Err(Error::invalid(format!("master equation needs rate ≥ 0, r_C > 0 (got {rate}, {r_c})")));
        }
        DensityMatrix1D::zeros(grid)?;
        let n = grid.len();
        let v = match dynamics {
            Dynamics::Full => potential.sample(&grid)?,
            Dynamics::CollapseOnly => vec![0.0; n],
        };
        let spectral = Spectral::new(grid);
        let kinetic: Vec<f64> = spectral
            .k
            .iter()
            .map(|k| units.hbar * units.hbar * k * k / (2.0 * units.mass) / n as f64)
            .collect();
        let mut gaussian = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let d = grid.x(i) - grid.x(j);
                gaussian[i * n + j] = (-d * d / (4.0 * r_c * r_c)).exp();
            }
        }
        let e_max = match dynamics {
            Dynamics::Full => {
                let t = kinetic.iter().cloned().fold(0.0, f64::max) * n as f64;
                let vmax = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                let vmin = v.iter().cloned().fold(f64::INFINITY, f64::min);
                (t + vmax - vmin) / units.hbar
            }
            Dynamics::CollapseOnly => 0.0,
        };
        Ok(MasterEquation {
            dim: n,
            dx: grid.dx(),
            rate,
            units: *units,
            dynamics,
            potential: v,
            kinetic,
            gaussian,
            spectral,
            spectral_radius: e_max + rate,
        })
    }

    pub fn from_params(
        grid: crate::Grid1D,
        potential: &PotentialSpec,
        units: &UnitsContext,
        params: &GrwParams,
        dynamics: Dynamics,
    ) -> Result<Self> {
        Self::new(grid, potential, units, params.effective_rate(), params.r_c(), dynamics)
    }

    /// Largest RK4 step used by [`MasterEquation::evolve`].
    pub fn max_step(&self) -> f64 {
        if self.spectral_radius > 0.0 {
            STABILITY_FRACTION / self.spectral_radius
        } else {
            f64::INFINITY
        }
    }

    /// `Tρ` with the kinetic operator applied along columns, or `ρT` along rows.
    fn kinetic_apply(&self, rho: &[Complex64], out: &mut [Complex64], buf: &mut [Complex64], left: bool) {
        let n = self.dim;
        for a in 0..n {
            for (b, v) in buf.iter_mut().enumerate() {
                *v = if left { rho[b * n + a] } else { rho[a * n + b] };
            }
            self.spectral.forward.process(buf);
            for (c, t) in buf.iter_mut().zip(&self.kinetic) {
                *c *= t;
            }
            self.spectral.inverse.process(buf);
            for (b, v) in buf.iter().enumerate() {
                let idx = if left { b * n + a } else { a * n + b };
                out[idx] = *v;
            }
        }
    }

    /// Right-hand side of the master equation.
    pub fn rhs(&self, rho: &[Complex64], out: &mut [Complex64]) {
        let n = self.dim;
        for ((o, r), g) in out.iter_mut().zip(rho).zip(&self.gaussian) {
            *o = r * (self.rate * (g - 1.0));
        }
        if self.dynamics == Dynamics::CollapseOnly {
            return;
        }
        let mut left = vec![Complex64::new(0.0, 0.0); n * n];
        let mut right = vec![Complex64::new(0.0, 0.0); n * n];
        let mut buf = vec![Complex64::new(0.0, 0.0); n];
        self.kinetic_apply(rho, &mut left, &mut buf, true);
        self.kinetic_apply(rho, &mut right, &mut buf, false);
        let minus_i_over_hbar = Complex64::new(0.0, -1.0 / self.units.hbar);
        for i in 0..n {
            for j in 0..n {
                let k = i * n + j;
                let comm = left[k] - right[k] + rho[k] * (self.potential[i] - self.potential[j]);
                out[k] += minus_i_over_hbar * comm;
            }
        }
    }

    fn rk4(&self, rho: &mut [Complex64], h: f64, scratch: &mut [Vec<Complex64>; 5]) {
        let [k1, k2, k3, k4, tmp] = scratch;
        self.rhs(rho, k1);
        for ((t, r), k) in tmp.iter_mut().zip(rho.iter()).zip(k1.iter()) {
            *t = r + k * (0.5 * h);
        }
        self.rhs(tmp, k2);
        for ((t, r), k) in tmp.iter_mut().zip(rho.iter()).zip(k2.iter()) {
            *t = r + k * (0.5 * h);
        }
        self.rhs(tmp, k3);
        for ((t, r), k) in tmp.iter_mut().zip(rho.iter()).zip(k3.iter()) {
            *t = r + k * h;
        }
        self.rhs(tmp, k4);
        for (i, r) in rho.iter_mut().enumerate() {
            *r += (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (h / 6.0);
        }
    }

    fn evolve_fixed(&self, rho0: &DensityMatrix1D, duration: f64, dt: f64) -> Result<DensityMatrix1D> {
        let steps = (duration / dt).ceil().max(1.0) as usize;
        let h = duration / steps as f64;
        let size = self.dim * self.dim;
        let mut scratch: [Vec<Complex64>; 5] = std::array::from_fn(|_| vec![Complex64::new(0.0, 0.0); size]);
        let mut rho = rho0.clone();
        let trace0 = rho0.trace();
        for s in 0..steps {
            self.rk4(&mut rho.values, h, &mut scratch);
            let drift = (rho.trace() - trace0).abs();
            if !(drift <= TRACE_DRIFT_LIMIT) {
                return Err(Error::IntegratorTolerance { drift }.at_time((s + 1) as f64 * h));
            }
        }
        Ok(rho)
    }

    /// Evolves `rho0` for `duration` with RK4 steps no longer than `dt` or
    /// [`MasterEquation::max_step`], halving the step if the trace drifts by more than
    /// 10⁻⁶.
    pub fn evolve(&self, rho0: &DensityMatrix1D, duration: f64, dt: f64) -> Result<DensityMatrix1D> {
        if rho0.dim() != self.dim || (rho0.grid.dx() - self.dx).abs() > 1e-12 * self.dx {
            return Err(Error::invalid("density matrix grid does not match the generator"));
        }
        if !(duration >= 0.0 && dt > 0.0) {
            return Err(Error::invalid(format!("need T ≥ 0 and dt > 0 (got {duration}, {dt})")));
        }
        if duration == 0.0 {
            return Ok(rho0.clone());
        }
        let mut h = dt.min(self.max_step());
        let mut last = None;
        for _ in 0..=MAX_HALVINGS {
            match self.evolve_fixed(rho0, duration, h) {
                Ok(rho) => return Ok(rho),
                Err(e) => last = Some(e),
            }
            h *= 0.5;
        }
        Err(last.expect("at least one attempt"))
    }
}

/// Evolves `rho0` under the GRW master equation for `duration`.
pub fn master_equation_evolve(
    rho0: &DensityMatrix1D,
    potential: &PotentialSpec,
    units: &UnitsContext,
    params: &GrwParams,
    duration: f64,
    dt: f64,
) -> Result<DensityMatrix1D> {
    MasterEquation::from_params(rho0.grid, potential, units, params, Dynamics::Full)?.evolve(rho0, duration, dt)
}
