use super::velocity::{VelocityEvaluator, VelocityFieldFrame};
use crate::exec::Execution;
use crate::numerics::{
    boundary_density, spectral_tail_mass, ComplexField1D, DensityCdf, PotentialSpec,
    SplitStepPropagator, UnitsContext, BOUNDARY_DENSITY_LIMIT, SPECTRAL_TAIL_LIMIT,
};
use crate::rng;
use crate::{Error, Result};

/// Positions within this distance count as the same point in the no-crossing check.
pub const TIE_TOLERANCE: f64 = 1e-13;
/// Trajectories must stay this many cells away from the grid ends.
const INTERIOR_MARGIN: f64 = 2.0;

/// Configuration-space points of independent single-particle trajectories guided by one
/// wave function.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryEnsemble {
    pub positions: Vec<f64>,
    pub time: f64,
    /// RNG stream id each trajectory drew its initial position from.
    pub streams: Vec<u64>,
}

impl TrajectoryEnsemble {
    pub fn from_positions(positions: Vec<f64>, time: f64) -> Self {
        let streams = (0..positions.len() as u64).collect();
        TrajectoryEnsemble { positions, time, streams }
    }

    /// Draws `n` initial points from `|ψ|²`, trajectory `i` using stream `(seed, i)`.
    pub fn sample_equilibrium(psi: &ComplexField1D, n: usize, seed: u64, time: f64) -> Result<Self> {
        let cdf = DensityCdf::new(&psi.density())?;
        let streams: Vec<u64> = (0..n as u64).map(|i| rng::purpose::INITIAL_POSITIONS + i).collect();
        let positions = streams
            .iter()
            .map(|&s| cdf.sample(&mut rng::stream(seed, s)))
            .collect();
        Ok(TrajectoryEnsemble { positions, time, streams })
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }
}

/// One RK4 step of `dX/dt = v(X, t)` between two frames, with linear interpolation in
/// time and cubic interpolation in space.
#[inline]
pub fn advance_point(x: f64, start: &VelocityFieldFrame, end: &VelocityFieldFrame) -> f64 {
    let h = end.time - start.time;
    let mid = |y: f64| 0.5 * (start.at(y) + end.at(y));
    let k1 = start.at(x);
    let k2 = mid(x + 0.5 * h * k1);
    let k3 = mid(x + 0.5 * h * k2);
    let k4 = end.at(x + h * k3);
    x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

/// Moves every trajectory through the consecutive frames.
pub fn advance_ensemble(
    ensemble: &TrajectoryEnsemble,
    frames: &[VelocityFieldFrame],
    exec: Execution,
) -> Result<TrajectoryEnsemble> {
    let Some(last) = frames.last() else {
        return Ok(ensemble.clone());
    };
    let grid = frames[0].grid;
    let positions = exec.try_map(ensemble.len(), |i| {
        let mut x = ensemble.positions[i];
        for pair in frames.windows(2) {
            x = advance_point(x, &pair[0], &pair[1]);
            if !grid.contains_interior(x, INTERIOR_MARGIN) {
                return Err(Error::DomainEscape { index: i, x, t: pair[1].time });
            }
        }
        Ok(x)
    })?;
    Ok(TrajectoryEnsemble {
        positions,
        time: last.time,
        streams: ensemble.streams.clone(),
    })
}

/// True when the order of `later` matches that of `initial` (ties within
/// [`TIE_TOLERANCE`] allowed).
pub fn ordering_preserved(initial: &[f64], later: &[f64]) -> bool {
    let mut order: Vec<usize> = (0..initial.len()).collect();
    order.sort_by(|&a, &b| initial[a].total_cmp(&initial[b]));
    order
        .windows(2)
        .all(|w| later[w[1]] - later[w[0]] >= -TIE_TOLERANCE)
}

/// Propagates `psi0` for `steps` split steps and stores one velocity frame per step
/// boundary (`steps + 1` frames). `on_step` sees the field after each step.
///
/// The boundary watchdog runs on every frame when `watchdog` is set.
pub fn record_frames(
    psi0: &ComplexField1D,
    potential: &PotentialSpec,
    units: &UnitsContext,
    dt: f64,
    steps: usize,
    watchdog: bool,
    mut on_step: impl FnMut(usize, &ComplexField1D),
) -> Result<(Vec<VelocityFieldFrame>, ComplexField1D)> {
    let tail = spectral_tail_mass(psi0);
    if tail > SPECTRAL_TAIL_LIMIT {
        return Err(Error::Aliasing { tail_mass: tail });
    }
    let prop = SplitStepPropagator::new(psi0.grid, potential, units, dt)?;
    let eval = VelocityEvaluator::new(psi0.grid, *units);
    let mut psi = psi0.clone();
    let mut frames = Vec::with_capacity(steps + 1);
    let check = |psi: &ComplexField1D, t: f64| -> Result<()> {
        if watchdog {
            let b = boundary_density(psi);
            if b > BOUNDARY_DENSITY_LIMIT {
                return Err(Error::BoundaryLeak { density: b }.at_time(t));
            }
        }
        Ok(())
    };
    check(&psi, 0.0)?;
    frames.push(eval.frame(&psi, 0.0));
    on_step(0, &psi);
    for s in 1..=steps {
        prop.step(&mut psi.values);
        let t = s as f64 * dt;
        check(&psi, t)?;
        frames.push(eval.frame(&psi, t));
        on_step(s, &psi);
    }
    psi.ensure_finite("frame recording")?;
    Ok((frames, psi))
}

/// Positions of an ensemble sampled at selected instants.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrajectoryHistory {
    pub times: Vec<f64>,
    pub positions: Vec<Vec<f64>>,
}

impl TrajectoryHistory {
    pub fn push(&mut self, ensemble: &TrajectoryEnsemble) {
        self.times.push(ensemble.time);
        self.positions.push(ensemble.positions.clone());
    }

    /// Positions of trajectory `id` over time.
    pub fn path(&self, id: usize) -> Vec<f64> {
        self.positions.iter().map(|p| p[id]).collect()
    }

    pub fn no_crossing(&self) -> bool {
        match self.positions.first() {
            Some(first) => self.positions.iter().all(|p| ordering_preserved(first, p)),
            None => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::states::{collision_state, gaussian_packet};
    use crate::numerics::Grid1D;

    fn constant_frames(c: f64, n: usize, dt: f64) -> Vec<VelocityFieldFrame> {
        let g = Grid1D::new(-50.0, 50.0, 64).unwrap();
        (0..=n)
            .map(|s| VelocityFieldFrame { grid: g, v: vec![c; 64], time: s as f64 * dt })
            .collect()
    }

    #[test]
    fn constant_velocity_is_exact() {
        let frames = constant_frames(0.75, 40, 0.05);
        let ens = TrajectoryEnsemble::from_positions(vec![-3.0, 0.0, 2.5], 0.0);
        let out = advance_ensemble(&ens, &frames, Execution::Sequential).unwrap();
        for (a, b) in ens.positions.iter().zip(&out.positions) {
            assert!((b - a - 0.75 * 2.0).abs() < 1e-12);
        }
        assert_eq!(out.time, 2.0);
    }

    #[test]
    fn escaping_trajectory_is_named() {
        let frames = constant_frames(1.0, 100, 0.1);
        let ens = TrajectoryEnsemble::from_positions(vec![0.0, 40.0], 0.0);
        match advance_ensemble(&ens, &frames, Execution::Sequential) {
            Err(Error::DomainEscape { index, .. }) => assert_eq!(index, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn free_gaussian_scaling_solution() {
        let u = UnitsContext::natural();
        let g = Grid1D::new(-30.0, 30.0, 1024).unwrap();
        let sigma = 1.0;
        let psi = gaussian_packet(g, 0.0, sigma, 0.0, &u).unwrap();
        let dt = 1e-3;
        let (frames, _) = record_frames(&psi, &PotentialSpec::Free, &u, dt, 2000, true, |_, _| {}).unwrap();
        let ens = TrajectoryEnsemble::from_positions(vec![sigma, -0.5 * sigma], 0.0);
        let out = advance_ensemble(&ens, &frames, Execution::Sequential).unwrap();
        let t: f64 = 2.0;
        let scale = (1.0 + (t / (2.0 * sigma * sigma)).powi(2)).sqrt();
        assert!((out.positions[0] - sigma * scale).abs() < 1e-4, "{}", out.positions[0]);
        assert!((out.positions[1] + 0.5 * sigma * scale).abs() < 1e-4);
    }

    #[test]
    fn isolated_particle_bounces_off_midpoint() {
        let u = UnitsContext::natural();
        let g = Grid1D::new(-40.0, 40.0, 1024).unwrap();
        let psi = collision_state(g, 5.0, 1.0, 2.0, &u).unwrap();
        let dt = 2e-3;
        let (frames, _) = record_frames(&psi, &PotentialSpec::Free, &u, dt, 2500, true, |_, _| {}).unwrap();
        let mut ens = TrajectoryEnsemble::from_positions(vec![-5.3, -4.6, -6.0], 0.0);
        let mut min_v = f64::INFINITY;
        let mut max_x = f64::NEG_INFINITY;
        let mut v_positive_seen = false;
        for pair in frames.windows(2) {
            ens = advance_ensemble(&ens, pair, Execution::Sequential).unwrap();
            let v = pair[1].at(ens.positions[0]);
            v_positive_seen |= v > 0.5;
            if v_positive_seen {
                min_v = min_v.min(v);
            }
            max_x = max_x.max(ens.positions.iter().cloned().fold(f64::NEG_INFINITY, f64::max));
        }
        assert!(v_positive_seen && min_v < 0.0, "no reversal: min v {min_v}");
        assert!(max_x < 0.0, "crossed the midpoint: {max_x}");
    }

    #[test]
    fn ordering_check_tolerates_ties() {
        assert!(ordering_preserved(&[0.0, 1.0, 2.0], &[0.5, 0.5 - 1e-14, 3.0]));
        assert!(!ordering_preserved(&[0.0, 1.0], &[1.0, 0.0]));
    }
}
