use crate::{Error, Result};

/// Actual positions `X_1 … X_N` of the constituents of a rigid body.
#[derive(Debug, Clone, PartialEq)]
pub struct ManyBodyConfig {
    positions: Vec<f64>,
}

impl ManyBodyConfig {
    pub fn new(positions: Vec<f64>) -> Result<Self> {
        if positions.is_empty() || positions.iter().any(|x| !x.is_finite()) {
            return Err(Error::invalid("configuration needs N ≥ 1 finite positions"));
        }
        Ok(ManyBodyConfig { positions })
    }

    pub fn n(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    /// `X_cm = (Σ X_k)/N`.
    pub fn center_of_mass(&self) -> f64 {
        self.positions.iter().sum::<f64>() / self.n() as f64
    }

    /// `R_k = X_k − X_cm` for `k = 1 … N−1`.
    pub fn relative(&self) -> Vec<f64> {
        let cm = self.center_of_mass();
        self.positions[..self.n() - 1].iter().map(|x| x - cm).collect()
    }
}

/// `(X_cm, [R_1 … R_{N−1}])`.
pub fn com_split(config: &ManyBodyConfig) -> (f64, Vec<f64>) {
    (config.center_of_mass(), config.relative())
}

/// Inverse of [`com_split`]: `X_k = X_cm + R_k` for `k < N` and
/// `X_N = X_cm − Σ_{k<N} R_k`.
pub fn reconstruct(x_cm: f64, relative: &[f64]) -> Vec<f64> {
    let mut xs: Vec<f64> = relative.iter().map(|r| x_cm + r).collect();
    xs.push(x_cm - relative.iter().sum::<f64>());
    xs
}

/// Both sides of the rearrangement of the collision exponent,
/// `Y_k − g x_k = [Y⁰ + g(X_cm⁰ + R_k⁰ − r_k)] − g x_cm`, where `Y_k = Y⁰ + g X_k⁰`,
/// `X_k⁰ = X_cm⁰ + R_k⁰` and `x_k = x_cm + r_k`.
pub fn exponent_identity(y0: f64, x_cm0: f64, r_k0: f64, r_k: f64, g: f64, x_cm: f64) -> (f64, f64) {
    let y_k = y0 + g * (x_cm0 + r_k0);
    let x_k = x_cm + r_k;
    let lhs = y_k - g * x_k;
    let rhs = (y0 + g * (x_cm0 + r_k0 - r_k)) - g * x_cm;
    (lhs, rhs)
}
