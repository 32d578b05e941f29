use super::estimates::EnvironmentInputs;
use crate::numerics::{Grid1D, UnitMode, UnitsContext};
use crate::{Error, Result};

/// Switching profile `f_t = 1/(t_f − t_i)` on `[t_i, t_f]` and its integral `g_t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionWindow {
    t_i: f64,
    t_f: f64,
}

impl InteractionWindow {
    pub fn new(t_i: f64, t_f: f64) -> Result<Self> {
        if !(t_i.is_finite() && t_f.is_finite() && t_f > t_i) {
            return Err(Error::invalid(format!("interaction window needs t_f > t_i (got {t_i}, {t_f})")));
        }
        Ok(InteractionWindow { t_i, t_f })
    }

    pub fn t_i(&self) -> f64 {
        self.t_i
    }

    pub fn t_f(&self) -> f64 {
        self.t_f
    }

    pub fn f(&self, t: f64) -> f64 {
        if (self.t_i..=self.t_f).contains(&t) {
            1.0 / (self.t_f - self.t_i)
        } else {
            0.0
        }
    }

    /// `g_t = ∫_{t_i}^t f_s ds`, clamped to `[0, 1]`.
    pub fn g(&self, t: f64) -> f64 {
        if t <= self.t_i {
            0.0
        } else if t >= self.t_f {
            1.0
        } else {
            (t - self.t_i) / (self.t_f - self.t_i)
        }
    }
}

/// Environmental particle: Gaussian packet `e^{−(y−a)²/4σ²}` arriving at Poisson rate `μ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathParticleSpec {
    sigma: f64,
    center: f64,
    rate: f64,
}

impl BathParticleSpec {
    pub fn new(sigma: f64, center: f64, rate: f64) -> Result<Self> {
        if !(sigma > 0.0 && sigma.is_finite() && center.is_finite() && rate > 0.0 && rate.is_finite()) {
            return Err(Error::invalid(format!(
                "bath particle needs σ > 0, finite centre and rate > 0 (got {sigma}, {center}, {rate})"
            )));
        }
        Ok(BathParticleSpec { sigma, center, rate })
    }

    /// Default packet width: the thermal wavelength of N₂ at room temperature in SI
    /// mode, otherwise 5% of the domain.
    pub fn default_sigma(units: &UnitsContext, grid: &Grid1D) -> f64 {
        match units.mode {
            UnitMode::Si => EnvironmentInputs::atmosphere().estimate().lambda_th,
            UnitMode::Natural => 0.05 * grid.length(),
        }
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    /// Width of the equivalent GRW localization, `√2σ`.
    pub fn equivalent_r_c(&self) -> f64 {
        std::f64::consts::SQRT_2 * self.sigma
    }
}
