use crate::grw::GrwParams;
use crate::numerics::{HBAR_SI, K_BOLTZMANN};
use crate::{Error, Result};
use std::f64::consts::{PI, SQRT_2};

/// SI inputs for a rigid sphere immersed in an ideal gas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvironmentInputs {
    /// Gas molecule mass (kg).
    pub m_gas: f64,
    /// Temperature (K).
    pub temperature: f64,
    /// Pressure (Pa).
    pub pressure: f64,
    /// Sphere radius (m).
    pub radius: f64,
}

impl EnvironmentInputs {
    /// Molecular nitrogen at sea level and room temperature around a 1 mm sphere.
    pub fn atmosphere() -> Self {
        EnvironmentInputs {
            m_gas: 4.7e-26,
            temperature: 298.0,
            pressure: 101_325.0,
            radius: 1e-3,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = [self.m_gas, self.temperature, self.pressure, self.radius]
            .iter()
            .all(|v| v.is_finite() && *v > 0.0);
        if ok {
            Ok(())
        } else {
            Err(Error::invalid(format!("environment inputs must be positive: {self:?}")))
        }
    }

    /// Evaluates the kinetic-theory estimates. Inputs are assumed valid.
    pub fn estimate(&self) -> EnvironmentEstimate {
        let kt = K_BOLTZMANN * self.temperature;
        let lambda_th = HBAR_SI / (2.0 * PI * self.m_gas * kt).sqrt();
        let n = self.pressure / kt;
        let v_bar = (8.0 * kt / (PI * self.m_gas)).sqrt();
        let sigma_cs = PI * self.radius * self.radius;
        let eta = n * sigma_cs * v_bar;
        EnvironmentEstimate {
            inputs: *self,
            lambda_th,
            n,
            v_bar,
            sigma_cs,
            eta,
            r_c_eff: SQRT_2 * lambda_th,
            lambda_eff: eta,
        }
    }
}

impl Default for EnvironmentInputs {
    fn default() -> Self {
        Self::atmosphere()
    }
}

/// Thermal wavelength, gas density, mean speed, cross-section, collision rate and the
/// equivalent GRW parameters, all in SI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvironmentEstimate {
    pub inputs: EnvironmentInputs,
    /// `ħ/√(2π m k_B T)`.
    pub lambda_th: f64,
    /// `p₀/(k_B T)`.
    pub n: f64,
    /// `√(8 k_B T/π m)`.
    pub v_bar: f64,
    /// `πR²`.
    pub sigma_cs: f64,
    /// `n σ_CS v̄`.
    pub eta: f64,
    /// `√2 λ_th`.
    pub r_c_eff: f64,
    /// `η`.
    pub lambda_eff: f64,
}

impl EnvironmentEstimate {
    pub fn new(inputs: EnvironmentInputs) -> Result<Self> {
        inputs.validate()?;
        Ok(inputs.estimate())
    }

    /// Key/value pairs in report order.
    pub fn table(&self) -> [(&'static str, f64); 7] {
        [
            ("lambda_th", self.lambda_th),
            ("n", self.n),
            ("v_bar", self.v_bar),
            ("sigma_cs", self.sigma_cs),
            ("eta", self.eta),
            ("r_c_eff", self.r_c_eff),
            ("lambda_eff", self.lambda_eff),
        ]
    }

    /// Fixed-order `key=value` lines with three significant digits.
    pub fn render(&self) -> String {
        self.table().iter().map(|(k, v)| format!("{k}={v:.2e}\n")).collect()
    }

    pub fn grw_equivalent(&self) -> GrwParams {
        GrwParams::new(self.lambda_eff, self.r_c_eff, 1.0).expect("estimates are positive")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atmosphere_values() {
        let e = EnvironmentEstimate::new(EnvironmentInputs::atmosphere()).unwrap();
        // kT = 4.1143e-21 J
        let kt: f64 = 1.380649e-23 * 298.0;
        assert!((kt - 4.1143e-21).abs() < 1e-24);
        assert!((e.n - 101325.0 / kt).abs() < 1e-6 * e.n);
        assert!((e.lambda_th / 3.03e-12 - 1.0).abs() < 0.01, "{}", e.lambda_th);
        assert!((e.v_bar / 472.2 - 1.0).abs() < 0.002, "{}", e.v_bar);
        assert!((e.sigma_cs - 3.1416e-6).abs() < 1e-10);
        assert!((e.eta / 3.654e22 - 1.0).abs() < 0.002, "{}", e.eta);
        assert_eq!(e.r_c_eff, SQRT_2 * e.lambda_th);
        assert_eq!(e.lambda_eff, e.eta);
    }

    #[test]
    fn render_order_and_digits() {
        let r = EnvironmentInputs::atmosphere().estimate().render();
        let keys: Vec<&str> = r.lines().map(|l| l.split('=').next().unwrap()).collect();
        assert_eq!(keys, ["lambda_th", "n", "v_bar", "sigma_cs", "eta", "r_c_eff", "lambda_eff"]);
        assert!(r.contains("eta=3.65e22"));
        assert!(r.contains("n=2.46e25"));
    }

    #[test]
    fn scaling_laws() {
        let base = EnvironmentInputs::atmosphere();
        let hot = EnvironmentInputs { temperature: 4.0 * base.temperature, ..base };
        let (a, b) = (base.estimate(), hot.estimate());
        assert!((b.lambda_th / a.lambda_th - 0.5).abs() < 1e-12);
        assert!((b.v_bar / a.v_bar - 2.0).abs() < 1e-12);
        assert!((b.n / a.n - 0.25).abs() < 1e-12);
        let big = EnvironmentInputs { radius: 2.0 * base.radius, ..base };
        assert!((big.estimate().eta / a.eta - 4.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_nonpositive() {
        let bad = EnvironmentInputs { pressure: 0.0, ..EnvironmentInputs::atmosphere() };
        assert!(EnvironmentEstimate::new(bad).is_err());
    }
}
