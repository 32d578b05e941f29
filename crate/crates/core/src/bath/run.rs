use super::shear::collision_multiplier;
use super::window::BathParticleSpec;
use crate::bohmian::{advance_point, VelocityEvaluator};
use crate::grw::{max_step_for_rate, snap_to_steps, PoissonClock};
use crate::numerics::{
    spectral_tail_mass, ComplexField1D, PotentialSpec, SplitStepPropagator, UnitsContext,
    SPECTRAL_TAIL_LIMIT,
};
use crate::rng;
use crate::{Error, Result};
use rand::Rng;
use rand_distr::{Distribution, Normal};

const INTERIOR_MARGIN: f64 = 2.0;

/// One instantaneous collision with a bath particle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionRecord {
    /// Step boundary at which the collision acted.
    pub time: f64,
    /// Index of the system particle that was hit (always 0 for a single particle).
    pub k: usize,
    /// Initial bath position relative to its packet centre.
    pub y0: f64,
    /// Localization centre `X(t_j) + Y⁰`.
    pub z: f64,
}

/// Packet centres `a_j` of successive bath particles.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum CenterShifts {
    /// Every packet sits at the spec's own centre.
    #[default]
    Fixed,
    /// `a_j` uniform in `[−half_width, half_width]` around the spec's centre, drawn from a
    /// stream of its own so the collision sequence is unchanged.
    Uniform { half_width: f64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RunOptions {
    /// Keep a copy of the conditional field every this many steps (and at the end).
    pub snapshot_every: Option<usize>,
    pub centers: CenterShifts,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BathRun {
    /// Conditional wave function at the final time.
    pub field: ComplexField1D,
    /// Step-boundary times of the trajectory record.
    pub times: Vec<f64>,
    /// Bohmian position `X(t)` at each recorded time.
    pub positions: Vec<f64>,
    pub collisions: Vec<CollisionRecord>,
    pub snapshots: Vec<(f64, ComplexField1D)>,
}

impl BathRun {
    pub fn final_position(&self) -> f64 {
        *self.positions.last().expect("trajectory has at least the initial point")
    }
}

/// Conditional-wave-function dynamics of a particle hit by bath particles at Poisson
/// times. Between collisions `ψ_C` evolves freely (under `potential`) and `X` follows
/// the guidance equation; at each collision a fresh `Y⁰ ~ N(0, σ²)` is drawn, the bath
/// particle ends at `Y_j = a_j + Y⁰ + X`, and `ψ_C` is multiplied by
/// `e^{−(Y_j − a_j − x)²/4σ²}`.
///
/// Collision times are drawn from `rng` first, then one `Y⁰` per collision in order.
#[allow(clippy::too_many_arguments)]
pub fn multi_collision_run<R: Rng>(
    psi0: &ComplexField1D,
    potential: &PotentialSpec,
    units: &UnitsContext,
    bath: &BathParticleSpec,
    x_init: f64,
    duration: f64,
    dt: f64,
    rng: &mut R,
    options: &RunOptions,
) -> Result<BathRun> {
    if !(dt > 0.0 && duration >= 0.0) {
        return Err(Error::invalid(format!("need dt > 0 and T ≥ 0 (got {dt}, {duration})")));
    }
    if dt > max_step_for_rate(bath.rate()) * (1.0 + 1e-9) {
        return Err(Error::invalid(format!(
            "dt = {dt} exceeds 10⁻³ of the mean collision gap for rate {}",
            bath.rate()
        )));
    }
    if bath.rate() * duration > 1e6 {
        return Err(Error::ResourceLimit(format!("{} expected collisions", bath.rate() * duration)));
    }
    psi0.ensure_finite("initial field")?;
    let tail = spectral_tail_mass(psi0);
    if tail > SPECTRAL_TAIL_LIMIT {
        return Err(Error::Aliasing { tail_mass: tail });
    }
    let grid = psi0.grid;
    if !grid.contains_interior(x_init, INTERIOR_MARGIN) {
        return Err(Error::DomainEscape { index: 0, x: x_init, t: 0.0 });
    }

    let steps = (duration / dt).round() as usize;
    let times = PoissonClock::new(bath.rate(), &mut *rng, 0.0)?.events_until(duration);
    let snapped = snap_to_steps(&times, dt, steps);
    let packet = Normal::new(0.0, bath.sigma()).map_err(|e| Error::invalid(e.to_string()))?;
    let mut shift_rng = match options.centers {
        CenterShifts::Fixed => None,
        CenterShifts::Uniform { half_width, seed } => Some((half_width, rng::stream(seed, rng::purpose::BATH))),
    };

    let prop = SplitStepPropagator::new(grid, potential, units, dt)?;
    let eval = VelocityEvaluator::new(grid, *units);
    let mut psi = psi0.clone();
    let mut x = x_init;
    let mut run = BathRun {
        field: psi0.clone(),
        times: Vec::with_capacity(steps + 1),
        positions: Vec::with_capacity(steps + 1),
        collisions: Vec::with_capacity(snapped.len()),
        snapshots: Vec::new(),
    };
    let mut next = 0;
    let mut frame = eval.frame(&psi, 0.0);
    for s in 0..=steps {
        let t = s as f64 * dt;
        if s > 0 {
            prop.step(&mut psi.values);
            let new_frame = eval.frame(&psi, t);
            x = advance_point(x, &frame, &new_frame);
            frame = new_frame;
            if !grid.contains_interior(x, INTERIOR_MARGIN) {
                return Err(Error::DomainEscape { index: 0, x, t });
            }
        }
        let mut hit = false;
        while next < snapped.len() && snapped[next] == s {
            let y0 = packet.sample(rng);
            let a = bath.center()
                + match &mut shift_rng {
                    None => 0.0,
                    Some((w, r)) => r.random_range(-*w..=*w),
                };
            let y = a + y0 + x;
            let rel = y - a;
            psi = psi.map_indexed(|xx, amp| amp * collision_multiplier(xx, rel, 1.0, bath.sigma()));
            psi.normalize().map_err(|_| {
                Error::CollapseToNull { z: x + y0, norm: 0.0 }.at_time(t)
            })?;
            run.collisions.push(CollisionRecord { time: t, k: 0, y0, z: x + y0 });
            next += 1;
            hit = true;
        }
        if hit {
            frame = eval.frame(&psi, t);
        }
        run.times.push(t);
        run.positions.push(x);
        if let Some(every) = options.snapshot_every {
            if every > 0 && (s % every == 0 || s == steps) {
                run.snapshots.push((t, psi.clone()));
            }
        }
    }
    psi.ensure_finite("bath evolution")?;
    run.field = psi;
    Ok(run)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bohmian::{advance_ensemble, record_frames, TrajectoryEnsemble};
    use crate::numerics::states::collision_state;
    use crate::numerics::Grid1D;
    use crate::Execution;

    fn state() -> (ComplexField1D, UnitsContext) {
        let u = UnitsContext::natural();
        let g = Grid1D::new(-30.0, 30.0, 512).unwrap();
        (collision_state(g, 5.0, 1.0, 1.0, &u).unwrap(), u)
    }

    #[test]
    fn tiny_rate_is_pure_guidance() {
        let (psi, u) = state();
        let bath = BathParticleSpec::new(1.0, 0.0, 1e-9).unwrap();
        let dt = 1e-2;
        let run = multi_collision_run(&psi, &PotentialSpec::Free, &u, &bath, -5.2, 2.0, dt, &mut rng::stream(1, 0), &RunOptions::default()).unwrap();
        assert!(run.collisions.is_empty());
        let (frames, field) = record_frames(&psi, &PotentialSpec::Free, &u, dt, 200, false, |_, _| {}).unwrap();
        let ens = advance_ensemble(&TrajectoryEnsemble::from_positions(vec![-5.2], 0.0), &frames, Execution::Sequential).unwrap();
        assert_eq!(run.field.values, field.values);
        assert_eq!(run.final_position(), ens.positions[0]);
    }

    #[test]
    fn centre_shifts_cancel() {
        let (psi, u) = state();
        let bath = BathParticleSpec::new(1.0, 0.0, 4.0).unwrap();
        let base = multi_collision_run(&psi, &PotentialSpec::Free, &u, &bath, -4.8, 1.0, 2.5e-4, &mut rng::stream(2, 0), &RunOptions::default()).unwrap();
        let opts = RunOptions { centers: CenterShifts::Uniform { half_width: 10.0, seed: 77 }, ..Default::default() };
        let shifted = multi_collision_run(&psi, &PotentialSpec::Free, &u, &bath, -4.8, 1.0, 2.5e-4, &mut rng::stream(2, 0), &opts).unwrap();
        assert!(!base.collisions.is_empty());
        assert!(base.field.sup_distance(&shifted.field) < 1e-10);
        assert_eq!(base.collisions.len(), shifted.collisions.len());
    }

    #[test]
    fn records_are_consistent() {
        let (psi, u) = state();
        let bath = BathParticleSpec::new(1.0, 0.0, 4.0).unwrap();
        let run = multi_collision_run(&psi, &PotentialSpec::Free, &u, &bath, -4.8, 1.0, 2.5e-4, &mut rng::stream(3, 0), &RunOptions { snapshot_every: Some(1000), ..Default::default() }).unwrap();
        for c in &run.collisions {
            let s = (c.time / 2.5e-4).round() as usize;
            assert_eq!(c.z, run.positions[s] + c.y0);
            assert_eq!(c.k, 0);
        }
        assert_eq!(run.snapshots.len(), 5);
        assert!((run.field.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn coarse_step_rejected() {
        let (psi, u) = state();
        let bath = BathParticleSpec::new(1.0, 0.0, 10.0).unwrap();
        assert!(multi_collision_run(&psi, &PotentialSpec::Free, &u, &bath, 0.0, 1.0, 0.01, &mut rng::stream(1, 0), &RunOptions::default()).is_err());
    }
}
