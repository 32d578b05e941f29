use super::gaussian::GaussianMeanState;
use super::params::{LambdaConvention, QmuplParams};
use crate::numerics::PotentialSpec;
use crate::rng::{self, purpose};
use crate::stats::rms;
use crate::{Error, Execution, Result};
use rand_distr::{Distribution, StandardNormal};

/// Relative force variation across `±Δq` above which the linearized mean dynamics is flagged.
const LINEARIZATION_LIMIT: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SdeOptions {
    pub fluctuations: bool,
    pub seed: u64,
    /// Path index within the seed; selects the Wiener stream.
    pub path: u64,
}

impl SdeOptions {
    pub fn deterministic() -> Self {
        SdeOptions { fluctuations: false, seed: 0, path: 0 }
    }

    pub fn stochastic(seed: u64, path: u64) -> Self {
        SdeOptions { fluctuations: true, seed, path }
    }
}

/// Sampled mean trajectory with the Wiener path `W(t)` that drove it.
#[derive(Debug, Clone, PartialEq)]
pub struct SdePath {
    pub times: Vec<f64>,
    pub x_bar: Vec<f64>,
    pub v_bar: Vec<f64>,
    pub w: Vec<f64>,
    pub seed: u64,
    pub fluctuations: bool,
    /// Steps where the force varied by more than 1% across `±Δq`.
    pub linearization_warnings: usize,
    pub first_warning: Option<f64>,
}

impl SdePath {
    pub fn increments(&self) -> Vec<f64> {
        self.w.windows(2).map(|p| p[1] - p[0]).collect()
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

/// Integrates `dx̄ = v̄ dt + √(ħ/M) dW`, `dv̄ = −∇V(x̄)/M dt + √Λ (ħ/M) dW` with one Wiener
/// process in both equations (Euler–Maruyama). Without fluctuations the drift is
/// integrated with RK4 and the seed is ignored.
pub fn sde_evolve(
    state0: &GaussianMeanState,
    potential: &PotentialSpec,
    params: &QmuplParams,
    duration: f64,
    dt: f64,
    options: SdeOptions,
) -> Result<SdePath> {
    potential.validate()?;
    if !(duration > 0.0 && dt > 0.0) {
        return Err(Error::invalid(format!("duration {duration} and dt {dt} must be positive")));
    }
    if dt > duration / 1e3 * (1.0 + 1e-12) {
        return Err(Error::invalid(format!("dt = {dt} exceeds duration/1000 = {}", duration / 1e3)));
    }
    let steps = (duration / dt).round() as usize;
    let dt = duration / steps as f64;
    let m = params.mass();
    let hm = params.hbar() / m;
    let a = hm.sqrt();
    let b = params.strength(LambdaConvention::Direct).sqrt() * hm;
    let (dq, _) = state0.spreads();
    let force = |x: f64| -potential.gradient(x) / m;
    let mut rng = rng::stream(options.seed, purpose::WIENER + options.path);

    let mut x = state0.x_bar;
    let mut v = state0.p_bar / m;
    let mut w = 0.0;
    let mut path = SdePath {
        times: Vec::with_capacity(steps + 1),
        x_bar: Vec::with_capacity(steps + 1),
        v_bar: Vec::with_capacity(steps + 1),
        w: Vec::with_capacity(steps + 1),
        seed: options.seed,
        fluctuations: options.fluctuations,
        linearization_warnings: 0,
        first_warning: None,
    };
    for n in 0..=steps {
        let t = n as f64 * dt;
        path.times.push(t);
        path.x_bar.push(x);
        path.v_bar.push(v);
        path.w.push(w);
        let spread = 0.5 * (potential.gradient(x + dq) - potential.gradient(x - dq)).abs();
        if spread > LINEARIZATION_LIMIT * potential.gradient(x).abs() {
            path.linearization_warnings += 1;
            path.first_warning.get_or_insert(t);
        }
        if n == steps {
            break;
        }
        if options.fluctuations {
            let g: f64 = StandardNormal.sample(&mut rng);
            let dw = g * dt.sqrt();
            let f = force(x);
            x += v * dt + a * dw;
            v += f * dt + b * dw;
            w += dw;
        } else {
            let k1 = (v, force(x));
            let k2 = (v + 0.5 * dt * k1.1, force(x + 0.5 * dt * k1.0));
            let k3 = (v + 0.5 * dt * k2.1, force(x + 0.5 * dt * k2.0));
            let k4 = (v + dt * k3.1, force(x + dt * k3.0));
            x += dt / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
            v += dt / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
        }
        if !(x.is_finite() && v.is_finite()) {
            return Err(Error::NumericOverflow { context: format!("mean trajectory at t = {t}") });
        }
    }
    Ok(path)
}

/// Free-body fluctuation magnitudes at time `t`, measured over independent paths and set
/// against the `W(t) ∼ √t` estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluctuationStatistics {
    pub t: f64,
    pub paths: usize,
    /// RMS of `√(ħ/M) W(t)`.
    pub rms_x_wiener: f64,
    /// RMS of `√Λ (ħ/M) ∫W`.
    pub rms_x_integrated: f64,
    pub rms_x: f64,
    pub rms_v: f64,
    /// `√(ħt/M)`.
    pub predicted_x_wiener: f64,
    /// `(2/3)√Λ (ħ/M) t^{3/2}`.
    pub predicted_x_integrated: f64,
    /// `(ħ/M)√(Λt)`.
    pub predicted_v: f64,
}

impl FluctuationStatistics {
    /// Largest factor by which a measured magnitude misses its estimate, in either direction.
    pub fn worst_factor(&self) -> f64 {
        [
            self.rms_x_wiener / self.predicted_x_wiener,
            self.rms_x_integrated / self.predicted_x_integrated,
            self.rms_v / self.predicted_v,
        ]
        .iter()
        .map(|r| r.max(1.0 / r))
        .fold(1.0, f64::max)
    }
}

pub fn fluctuation_statistics(
    params: &QmuplParams,
    t: f64,
    dt: f64,
    paths: usize,
    seed: u64,
    exec: Execution,
) -> Result<FluctuationStatistics> {
    if paths < 2 {
        return Err(Error::invalid("fluctuation statistics need at least two paths"));
    }
    let state = GaussianMeanState::asymptotic(params, 0.0, 0.0);
    let hm = params.hbar() / params.mass();
    let a = hm.sqrt();
    let finals = exec.try_map(paths, |i| {
        let p = sde_evolve(&state, &PotentialSpec::Free, params, t, dt, SdeOptions::stochastic(seed, i as u64))?;
        let n = p.len() - 1;
        Ok::<_, Error>((p.x_bar[n], p.v_bar[n], p.w[n]))
    })?;
    let wiener: Vec<f64> = finals.iter().map(|f| a * f.2).collect();
    let integrated: Vec<f64> = finals.iter().map(|f| f.0 - a * f.2).collect();
    let xs: Vec<f64> = finals.iter().map(|f| f.0).collect();
    let vs: Vec<f64> = finals.iter().map(|f| f.1).collect();
    let sqrt_lambda = params.strength(LambdaConvention::Direct).sqrt();
    Ok(FluctuationStatistics {
        t,
        paths,
        rms_x_wiener: rms(&wiener),
        rms_x_integrated: rms(&integrated),
        rms_x: rms(&xs),
        rms_v: rms(&vs),
        predicted_x_wiener: (hm * t).sqrt(),
        predicted_x_integrated: 2.0 / 3.0 * sqrt_lambda * hm * t.powf(1.5),
        predicted_v: hm * sqrt_lambda * t.sqrt(),
    })
}

/// Residual of `Ẍ = −∇V(X)/M` along a fluctuation-free mean trajectory, using the central
/// second difference of the sampled positions.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonReport {
    pub dt: f64,
    pub max_residual: f64,
    pub accelerations: Vec<f64>,
    pub forces: Vec<f64>,
}

pub fn newton_check(
    potential: &PotentialSpec,
    params: &QmuplParams,
    x0: f64,
    v0: f64,
    duration: f64,
    dt: f64,
) -> Result<NewtonReport> {
    let state = GaussianMeanState::asymptotic(params, x0, v0 * params.mass());
    let path = sde_evolve(&state, potential, params, duration, dt, SdeOptions::deterministic())?;
    let h = path.times[1] - path.times[0];
    let xs = &path.x_bar;
    let accelerations: Vec<f64> = xs.windows(3).map(|w| (w[2] - 2.0 * w[1] + w[0]) / (h * h)).collect();
    let forces: Vec<f64> = xs[1..xs.len() - 1].iter().map(|&x| -potential.gradient(x) / params.mass()).collect();
    let max_residual = accelerations.iter().zip(&forces).map(|(a, f)| (a - f).abs()).fold(0.0, f64::max);
    Ok(NewtonReport { dt: h, max_residual, accelerations, forces })
}
