use super::gaussian::GaussianMeanState;
use super::sde::SdePath;
use crate::bohmian::{advance_point, VelocityEvaluator};
use crate::numerics::{Grid1D, UnitMode, UnitsContext};
use crate::{Error, Result};

/// Guidance of the centre of mass by the asymptotic Gaussian along a mean path.
#[derive(Debug, Clone, PartialEq)]
pub struct VelocityIdentityReport {
    /// Largest `|v(x̄) − v̄|` over the path, from the numerically sampled velocity field.
    pub max_mean_velocity_error: f64,
    /// Largest deviation of the sampled field from `p̄/M − (ħs/M)(x − x̄)` on `x̄ ± Δq`.
    pub max_field_error: f64,
    /// Largest `|X − x̄|/Δq` of the two trajectories started at `x̄ ± Δq`.
    pub max_offset: f64,
    /// Smallest `X₊ − X₋` along the path.
    pub min_separation: f64,
    pub delta_q: f64,
    pub frames: usize,
}

impl VelocityIdentityReport {
    /// The two offsets never cross and stay within `bound` spreads of the mean.
    pub fn bounded(&self, bound: f64) -> bool {
        self.min_separation > 0.0 && self.max_offset <= bound
    }
}

/// Renders the Gaussian family along `path`, computes its guidance field on `grid` and
/// follows trajectories started at `x̄ ± Δq` through the sampled frames.
pub fn bohmian_velocity_identity(
    state: &GaussianMeanState,
    path: &SdePath,
    grid: Grid1D,
) -> Result<VelocityIdentityReport> {
    if path.len() < 2 {
        return Err(Error::invalid("velocity identity needs at least two path samples"));
    }
    let units = UnitsContext::new(state.hbar, state.mass, UnitMode::Natural)?;
    let evaluator = VelocityEvaluator::new(grid, units);
    let (dq, _) = state.spreads();
    let frame_at = |n: usize| -> Result<_> {
        let s = state.moved(path.x_bar[n], path.v_bar[n] * state.mass);
        let psi = s.render(grid).map_err(|e| e.at_time(path.times[n]))?;
        Ok((s, evaluator.frame(&psi, path.times[n])))
    };

    let mut report = VelocityIdentityReport {
        max_mean_velocity_error: 0.0,
        max_field_error: 0.0,
        max_offset: 1.0,
        min_separation: 2.0 * dq,
        delta_q: dq,
        frames: path.len(),
    };
    let mut xs = [path.x_bar[0] - dq, path.x_bar[0] + dq];
    let (mut s0, mut f0) = frame_at(0)?;
    for n in 0..path.len() {
        let mean = path.x_bar[n];
        report.max_mean_velocity_error = report.max_mean_velocity_error.max((f0.at(mean) - path.v_bar[n]).abs());
        for x in [mean - dq, mean + dq] {
            report.max_field_error = report.max_field_error.max((f0.at(x) - s0.velocity(x)).abs());
        }
        if n + 1 == path.len() {
            break;
        }
        let (s1, f1) = frame_at(n + 1)?;
        for x in xs.iter_mut() {
            *x = advance_point(*x, &f0, &f1);
        }
        let next = path.x_bar[n + 1];
        report.max_offset = xs.iter().map(|x| (x - next).abs() / dq).fold(report.max_offset, f64::max);
        report.min_separation = report.min_separation.min(xs[1] - xs[0]);
        s0 = s1;
        f0 = f1;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{sde_evolve, QmuplParams, SdeOptions};
    use crate::numerics::PotentialSpec;

    fn grid() -> Grid1D {
        Grid1D::centered(16.0, 1024).unwrap()
    }

    fn run(p_bar: f64, potential: PotentialSpec, options: SdeOptions) -> VelocityIdentityReport {
        let p = QmuplParams::natural();
        let s = GaussianMeanState::asymptotic(&p, 0.0, p_bar);
        let path = sde_evolve(&s, &potential, &p, 10.0, 1e-2, options).unwrap();
        bohmian_velocity_identity(&s, &path, grid()).unwrap()
    }

    #[test]
    fn resting_mean_has_zero_velocity() {
        let p = QmuplParams::natural();
        let s = GaussianMeanState::asymptotic(&p, 0.5, 0.0);
        let psi = s.render(grid()).unwrap();
        let f = crate::bohmian::velocity_field(&psi, &UnitsContext::natural());
        assert!(f.at(0.5).abs() < 1e-8, "{}", f.at(0.5));
    }

    #[test]
    fn unit_momentum_moves_at_unit_speed() {
        let p = QmuplParams::natural();
        let s = GaussianMeanState::asymptotic(&p, -0.25, 1.0);
        let psi = s.render(grid()).unwrap();
        let f = crate::bohmian::velocity_field(&psi, &UnitsContext::natural());
        assert!((f.at(-0.25) - 1.0).abs() < 1e-6, "{}", f.at(-0.25));
    }

    #[test]
    fn offsets_contract_onto_the_mean() {
        let r = run(1.0, PotentialSpec::Harmonic { k: 0.01 }, SdeOptions::deterministic());
        assert!(r.max_mean_velocity_error < 1e-6, "{r:?}");
        assert!(r.max_field_error < 1e-6, "{r:?}");
        assert!(r.bounded(1.0 + 1e-6), "{r:?}");
    }

    #[test]
    fn noisy_mean_keeps_offsets_bounded() {
        let r = run(0.0, PotentialSpec::Free, SdeOptions::stochastic(8, 0));
        assert!(r.bounded(8.0), "{r:?}");
        assert!(r.max_mean_velocity_error < 1e-6, "{r:?}");
    }
}
