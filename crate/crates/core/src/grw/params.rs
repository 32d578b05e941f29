use crate::{Error, Result};

/// Standard GRW collapse rate per particle (s⁻¹).
pub const GRW_LAMBDA: f64 = 1e-16;
/// Standard GRW localization width (m).
pub const GRW_R_C: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrwParams {
    lambda: f64,
    r_c: f64,
    n_particles: f64,
}

impl GrwParams {
    /// `n_particles` is a float so Avogadro-scale counts are representable.
    pub fn new(lambda: f64, r_c: f64, n_particles: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::invalid(format!("collapse rate λ must be positive (got {lambda})")));
        }
        if !(r_c > 0.0 && r_c.is_finite()) {
            return Err(Error::invalid(format!("localization width r_C must be positive (got {r_c})")));
        }
        if !(n_particles >= 1.0 && n_particles.is_finite()) {
            return Err(Error::invalid(format!("particle count must be ≥ 1 (got {n_particles})")));
        }
        Ok(GrwParams { lambda, r_c, n_particles })
    }

    pub fn standard() -> Self {
        GrwParams { lambda: GRW_LAMBDA, r_c: GRW_R_C, n_particles: 1.0 }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn r_c(&self) -> f64 {
        self.r_c
    }

    pub fn n_particles(&self) -> f64 {
        self.n_particles
    }

    /// Centre-of-mass collapse rate `Λ = N λ`.
    pub fn effective_rate(&self) -> f64 {
        self.n_particles * self.lambda
    }
}

pub fn amplified_rate(params: &GrwParams) -> f64 {
    params.effective_rate()
}
