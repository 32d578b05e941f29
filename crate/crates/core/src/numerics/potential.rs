use super::Grid1D;
use crate::{Error, Result};

/// Reduced Planck constant in J·s.
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// Boltzmann constant in J/K.
pub const K_BOLTZMANN: f64 = 1.380_649e-23;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitMode {
    /// ħ = m = 1.
    Natural,
    Si,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitsContext {
    pub hbar: f64,
    pub mass: f64,
    pub mode: UnitMode,
}

impl UnitsContext {
    pub fn natural() -> Self {
        UnitsContext { hbar: 1.0, mass: 1.0, mode: UnitMode::Natural }
    }

    /// Natural ħ with a non-unit mass.
    pub fn natural_with_mass(mass: f64) -> Result<Self> {
        Self::new(1.0, mass, UnitMode::Natural)
    }

    pub fn si(mass_kg: f64) -> Result<Self> {
        Self::new(HBAR_SI, mass_kg, UnitMode::Si)
    }

    pub fn new(hbar: f64, mass: f64, mode: UnitMode) -> Result<Self> {
        if !(hbar > 0.0 && hbar.is_finite() && mass > 0.0 && mass.is_finite()) {
            return Err(Error::invalid(format!("units need ħ > 0 and m > 0 (got {hbar}, {mass})")));
        }
        Ok(UnitsContext { hbar, mass, mode })
    }

    pub fn hbar_over_mass(&self) -> f64 {
        self.hbar / self.mass
    }
}

/// External potential `V(x)`.
#[derive(Debug, Clone, PartialEq)]
pub enum PotentialSpec {
    Free,
    /// `V = slope · x`.
    Linear { slope: f64 },
    /// `V = k x² / 2`.
    Harmonic { k: f64 },
    /// Samples on the propagation grid.
    Tabulated(Vec<f64>),
}

impl PotentialSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            PotentialSpec::Free => Ok(()),
            PotentialSpec::Linear { slope } if slope.is_finite() => Ok(()),
            PotentialSpec::Harmonic { k } if k.is_finite() => Ok(()),
            PotentialSpec::Tabulated(v) if v.iter().all(|x| x.is_finite()) => Ok(()),
            other => Err(Error::invalid(format!("non-finite potential {other:?}"))),
        }
    }

    /// Potential sampled on `grid`.
    pub fn sample(&self, grid: &Grid1D) -> Result<Vec<f64>> {
        self.validate()?;
        match self {
            PotentialSpec::Tabulated(v) => {
                if v.len() != grid.len() {
                    return Err(Error::invalid(format!(
                        "tabulated potential has {} samples for a {}-point grid",
                        v.len(),
                        grid.len()
                    )));
                }
                Ok(v.clone())
            }
            analytic => Ok(grid.points().into_iter().map(|x| analytic.value(x)).collect()),
        }
    }

    /// Value at `x` for analytic potentials; tabulated potentials return 0 here
    /// and must be evaluated through [`sample`](Self::sample).
    pub fn value(&self, x: f64) -> f64 {
        match self {
            PotentialSpec::Free | PotentialSpec::Tabulated(_) => 0.0,
            PotentialSpec::Linear { slope } => slope * x,
            PotentialSpec::Harmonic { k } => 0.5 * k * x * x,
        }
    }

    /// `dV/dx` at `x`. Tabulated potentials need their grid; see [`gradient_on`](Self::gradient_on).
    pub fn gradient(&self, x: f64) -> f64 {
        match self {
            PotentialSpec::Free | PotentialSpec::Tabulated(_) => 0.0,
            PotentialSpec::Linear { slope } => *slope,
            PotentialSpec::Harmonic { k } => k * x,
        }
    }

    /// Gradient that also handles tabulated samples (central differences, cubic interpolation).
    pub fn gradient_on(&self, grid: &Grid1D, x: f64) -> f64 {
        match self {
            PotentialSpec::Tabulated(v) if v.len() == grid.len() => {
                let n = v.len();
                let dx = grid.dx();
                let d: Vec<f64> = (0..n)
                    .map(|i| (v[(i + 1) % n] - v[(i + n - 1) % n]) / (2.0 * dx))
                    .collect();
                super::interp::periodic_real(&d, grid.fractional_index(x))
            }
            _ => self.gradient(x),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units_reject_nonpositive() {
        assert!(UnitsContext::new(0.0, 1.0, UnitMode::Natural).is_err());
        assert!(UnitsContext::new(1.0, -1.0, UnitMode::Natural).is_err());
    }

    #[test]
    fn tabulated_length_checked() {
        let g = Grid1D::new(0.0, 1.0, 8).unwrap();
        assert!(PotentialSpec::Tabulated(vec![0.0; 7]).sample(&g).is_err());
        assert!(PotentialSpec::Tabulated(vec![0.0; 8]).sample(&g).is_ok());
        assert!(PotentialSpec::Linear { slope: f64::NAN }.sample(&g).is_err());
    }

    #[test]
    fn tabulated_gradient_matches_harmonic() {
        let g = Grid1D::new(-5.0, 5.0, 256).unwrap();
        let h = PotentialSpec::Harmonic { k: 2.0 };
        let t = PotentialSpec::Tabulated(h.sample(&g).unwrap());
        assert!((t.gradient_on(&g, 0.73) - h.gradient(0.73)).abs() < 1e-3);
    }
}
