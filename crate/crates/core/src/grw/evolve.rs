use super::clock::{snap_to_steps, PoissonClock};
use super::localization::{apply_localization, sample_collapse_center};
use super::params::GrwParams;
use crate::numerics::{
    spectral_tail_mass, ComplexField1D, PotentialSpec, SplitStepPropagator, UnitsContext,
    SPECTRAL_TAIL_LIMIT,
};
use crate::{Error, Result};
use rand::Rng;

/// Largest admissible step as a fraction of the mean gap between collapses.
pub const SNAP_FRACTION: f64 = 1e-3;

/// Step bound `dt ≤ 10⁻³ / rate` for inserting Poisson events at step boundaries.
pub fn max_step_for_rate(rate: f64) -> f64 {
    if rate > 0.0 {
        SNAP_FRACTION / rate
    } else {
        f64::INFINITY
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollapseEvent {
    /// Step boundary at which the collapse was applied.
    pub time: f64,
    pub center: f64,
    /// `‖L(z)ψ‖` before renormalization.
    pub pre_norm: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GrwRun {
    pub field: ComplexField1D,
    pub events: Vec<CollapseEvent>,
}

/// One GRW realization with collapse rate `Λ = Nλ` and width `r_C`.
#[allow(clippy::too_many_arguments)]
pub fn evolve_grw<R: Rng>(
    psi0: &ComplexField1D,
    potential: &PotentialSpec,
    units: &UnitsContext,
    params: &GrwParams,
    duration: f64,
    dt: f64,
    rng: &mut R,
) -> Result<GrwRun> {
    evolve_with_collapses(psi0, potential, units, params.effective_rate(), params.r_c(), duration, dt, rng)
}

/// Piecewise-deterministic evolution: split-step Schrödinger dynamics with localizations
/// inserted at Poisson times snapped to step boundaries. A zero rate reproduces
/// [`split_step_propagate`](crate::numerics::split_step_propagate) bit for bit.
///
/// Event times are drawn first from `rng`, then the centres in event order.
#[allow(clippy::too_many_arguments)]
pub fn evolve_with_collapses<R: Rng>(
    psi0: &ComplexField1D,
    potential: &PotentialSpec,
    units: &UnitsContext,
    rate: f64,
    r_c: f64,
    duration: f64,
    dt: f64,
    rng: &mut R,
) -> Result<GrwRun> {
    if !(dt > 0.0 && duration >= 0.0) {
        return Err(Error::invalid(format!("need dt > 0 and T ≥ 0 (got {dt}, {duration})")));
    }
    if dt > max_step_for_rate(rate) * (1.0 + 1e-9) {
        return Err(Error::invalid(format!(
            "dt = {dt} exceeds 10⁻³ of the mean collapse gap for rate {rate}"
        )));
    }
    if rate * duration > 1e6 {
        return Err(Error::ResourceLimit(format!("{} expected collapses", rate * duration)));
    }
    psi0.ensure_finite("initial field")?;
    let tail = spectral_tail_mass(psi0);
    if tail > SPECTRAL_TAIL_LIMIT {
        return Err(Error::Aliasing { tail_mass: tail });
    }
    let steps = (duration / dt).round() as usize;
    let times = PoissonClock::new(rate, &mut *rng, 0.0)?.events_until(duration);
    let snapped = snap_to_steps(&times, dt, steps);

    let prop = SplitStepPropagator::new(psi0.grid, potential, units, dt)?;
    let mut psi = psi0.clone();
    let mut events = Vec::with_capacity(snapped.len());
    let mut next = 0;
    for s in 0..=steps {
        if s > 0 {
            prop.step(&mut psi.values);
        }
        while next < snapped.len() && snapped[next] == s {
            let t = s as f64 * dt;
            let center = sample_collapse_center(&psi, r_c, rng).map_err(|e| e.at_time(t))?;
            let (collapsed, pre_norm) = apply_localization(&psi, center, r_c).map_err(|e| e.at_time(t))?;
            psi = collapsed;
            events.push(CollapseEvent { time: t, center, pre_norm });
            next += 1;
        }
    }
    psi.ensure_finite("GRW evolution")?;
    Ok(GrwRun { field: psi, events })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::states::{collision_state, gaussian_packet};
    use crate::numerics::{split_step_propagate, Grid1D};
    use crate::rng;
    use crate::stats::{mean, variance};

    #[test]
    fn zero_rate_is_plain_schroedinger() {
        let u = UnitsContext::natural();
        let g = Grid1D::new(-20.0, 20.0, 256).unwrap();
        let psi = gaussian_packet(g, 0.0, 1.0, 1.0, &u).unwrap();
        let run = evolve_with_collapses(&psi, &PotentialSpec::Free, &u, 0.0, 1.0, 1.0, 0.01, &mut rng::stream(1, 0)).unwrap();
        let direct = split_step_propagate(&psi, &PotentialSpec::Free, &u, 0.01, 100).unwrap();
        assert!(run.events.is_empty());
        assert_eq!(run.field.values, direct.values);
    }

    #[test]
    fn event_counts_are_poisson() {
        let u = UnitsContext::natural();
        let g = Grid1D::new(-20.0, 20.0, 64).unwrap();
        let psi = gaussian_packet(g, 0.0, 2.0, 0.0, &u).unwrap();
        let p = GrwParams::new(10.0, 3.0, 1.0).unwrap();
        let counts: Vec<f64> = (0..1000)
            .map(|i| {
                evolve_grw(&psi, &PotentialSpec::Free, &u, &p, 1.0, 1e-4, &mut rng::stream(5, i))
                    .unwrap()
                    .events
                    .len() as f64
            })
            .collect();
        assert!((mean(&counts) - 10.0).abs() < 1.0);
        assert!((variance(&counts) - 10.0).abs() < 1.5);
    }

    #[test]
    fn norm_is_one_after_collapses() {
        let u = UnitsContext::natural();
        let g = Grid1D::new(-30.0, 30.0, 512).unwrap();
        let psi = collision_state(g, 5.0, 1.0, 1.0, &u).unwrap();
        let p = GrwParams::new(5.0, 1.0, 1.0).unwrap();
        let run = evolve_grw(&psi, &PotentialSpec::Free, &u, &p, 1.0, 2e-4, &mut rng::stream(2, 0)).unwrap();
        assert!(!run.events.is_empty());
        assert!((run.field.norm_sqr() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn same_seed_same_run() {
        let u = UnitsContext::natural();
        let g = Grid1D::new(-30.0, 30.0, 256).unwrap();
        let psi = collision_state(g, 5.0, 1.0, 1.0, &u).unwrap();
        let p = GrwParams::new(4.0, 1.0, 1.0).unwrap();
        let a = evolve_grw(&psi, &PotentialSpec::Free, &u, &p, 1.0, 2.5e-4, &mut rng::stream(9, 3)).unwrap();
        let b = evolve_grw(&psi, &PotentialSpec::Free, &u, &p, 1.0, 2.5e-4, &mut rng::stream(9, 3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn coarse_step_rejected() {
        let u = UnitsContext::natural();
        let g = Grid1D::new(-30.0, 30.0, 64).unwrap();
        let psi = gaussian_packet(g, 0.0, 2.0, 0.0, &u).unwrap();
        let p = GrwParams::new(10.0, 1.0, 1.0).unwrap();
        assert!(evolve_grw(&psi, &PotentialSpec::Free, &u, &p, 1.0, 0.01, &mut rng::stream(1, 0)).is_err());
    }
}
