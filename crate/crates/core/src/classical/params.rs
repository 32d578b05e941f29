use crate::bath::EnvironmentInputs;
use crate::numerics::HBAR_SI;
use crate::{Error, Result};
use std::fmt;

/// Which form of the collapse strength a formula consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LambdaConvention {
    /// `Λ_QMUPL = Λ/r_C²` (m⁻² s⁻¹).
    Qmupl,
    /// `Λ` in s⁻¹ inserted where the formula has its collapse strength.
    Direct,
}

impl LambdaConvention {
    pub fn label(self) -> &'static str {
        match self {
            LambdaConvention::Qmupl => "lambda_qmupl",
            LambdaConvention::Direct => "lambda_direct",
        }
    }
}

/// Collapse strength of a centre of mass: rate `Λ`, width `r_C`, mass `M` and `ħ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QmuplParams {
    lambda: f64,
    r_c: f64,
    lambda_qmupl: f64,
    mass: f64,
    hbar: f64,
}

impl QmuplParams {
    pub fn new(lambda: f64, r_c: f64, mass: f64, hbar: f64) -> Result<Self> {
        let ok = [lambda, r_c, mass, hbar].iter().all(|v| v.is_finite() && *v > 0.0);
        if !ok {
            return Err(Error::invalid(format!(
                "collapse parameters must be positive (Λ = {lambda}, r_C = {r_c}, M = {mass}, ħ = {hbar})"
            )));
        }
        Ok(QmuplParams { lambda, r_c, lambda_qmupl: lambda / (r_c * r_c), mass, hbar })
    }

    /// A 1 g body in air: `Λ = η` and `r_C = √2 λ_th` from the atmospheric estimates.
    pub fn sphere_in_atmosphere() -> Self {
        let e = EnvironmentInputs::atmosphere().estimate();
        Self::new(e.lambda_eff, e.r_c_eff, 1e-3, HBAR_SI).expect("estimates are positive")
    }

    /// Unit rate, width, mass and `ħ`.
    pub fn natural() -> Self {
        Self::new(1.0, 1.0, 1.0, 1.0).expect("unit parameters")
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn r_c(&self) -> f64 {
        self.r_c
    }

    pub fn lambda_qmupl(&self) -> f64 {
        self.lambda_qmupl
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn with_mass(self, mass: f64) -> Result<Self> {
        Self::new(self.lambda, self.r_c, mass, self.hbar)
    }

    pub fn with_lambda(self, lambda: f64) -> Result<Self> {
        Self::new(lambda, self.r_c, self.mass, self.hbar)
    }

    /// Strength used by a formula under `convention`.
    pub fn strength(&self, convention: LambdaConvention) -> f64 {
        match convention {
            LambdaConvention::Qmupl => self.lambda_qmupl,
            LambdaConvention::Direct => self.lambda,
        }
    }
}

/// Time for an arbitrary state to localize to spread `l`: `t_C = 3/(2 l² Λ_QMUPL)`.
pub fn collapse_time(l: f64, params: &QmuplParams) -> Result<f64> {
    if !(l > 0.0) {
        return Err(Error::invalid(format!("length must be positive (got {l})")));
    }
    Ok(3.0 / (2.0 * l * l * params.lambda_qmupl()))
}

/// Time for fluctuations around the classical motion to reach `L`:
/// `t_cl = ((2/3)(L/√Λ_QMUPL)(M/ħ))^{2/3}`.
pub fn classical_time(length: f64, params: &QmuplParams) -> Result<f64> {
    if !(length >= 0.0) {
        return Err(Error::invalid(format!("length must be non-negative (got {length})")));
    }
    let inner = 2.0 / 3.0 * length / params.lambda_qmupl().sqrt() * params.mass() / params.hbar();
    Ok(inner.powf(2.0 / 3.0))
}

/// Regime summary for one body.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport {
    pub params: QmuplParams,
    pub l: f64,
    pub big_l: f64,
    pub t_c: f64,
    pub t_cl: f64,
    pub delta_q: f64,
    pub delta_p: f64,
    /// `(2/3)√Λ ħ/M`, coefficient of `t^{3/2}` in the integrated position noise.
    pub coef_x_integrated: f64,
    /// `√(ħ/M)`, coefficient of `t^{1/2}` in the direct position noise.
    pub coef_x_wiener: f64,
    /// `(ħ/M)√Λ`, coefficient of `t^{1/2}` in the velocity noise.
    pub coef_v: f64,
}

impl RegimeReport {
    pub fn new(params: QmuplParams, l: f64, big_l: f64) -> Result<Self> {
        let state = super::GaussianMeanState::asymptotic(&params, 0.0, 0.0);
        let (delta_q, delta_p) = state.spreads();
        let hm = params.hbar() / params.mass();
        let sqrt_lambda = params.strength(LambdaConvention::Direct).sqrt();
        Ok(RegimeReport {
            params,
            l,
            big_l,
            t_c: collapse_time(l, &params)?,
            t_cl: classical_time(big_l, &params)?,
            delta_q,
            delta_p,
            coef_x_integrated: 2.0 / 3.0 * sqrt_lambda * hm,
            coef_x_wiener: hm.sqrt(),
            coef_v: hm * sqrt_lambda,
        })
    }
}

impl fmt::Display for RegimeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let q = LambdaConvention::Qmupl.label();
        let d = LambdaConvention::Direct.label();
        writeln!(f, "t_c={:.2e} # {q}", self.t_c)?;
        writeln!(f, "t_cl={:.2e} # {q}", self.t_cl)?;
        writeln!(f, "delta_q={:.2e} # {d}", self.delta_q)?;
        writeln!(f, "delta_p={:.2e} # {d}", self.delta_p)?;
        writeln!(f, "coef_x_integrated={:.2e} # {d}", self.coef_x_integrated)?;
        writeln!(f, "coef_x_wiener={:.2e}", self.coef_x_wiener)?;
        writeln!(f, "coef_v={:.2e} # {d}", self.coef_v)
    }
}
