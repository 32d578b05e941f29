use crate::exec::Execution;
use crate::grw::PoissonClock;
use crate::rng;
use crate::stats::{mean, variance, weighted_linear_fit, LinearFit};
use crate::{Error, Result};
use rand::Rng;

/// How collisions with an N-particle body are generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AmplificationModel {
    /// One stream of total rate `Nλ`, each event hitting a uniformly chosen constituent.
    #[default]
    UniformTarget,
    /// `N` independent streams of rate `λ`, one per constituent, merged in time.
    IndependentStreams,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmplificationRow {
    pub n: usize,
    /// Observed centre-of-mass localization rate (events per unit time).
    pub fitted_rate: f64,
    /// Standard error of `fitted_rate` over the runs.
    pub stderr: f64,
    pub mean_events: f64,
    /// How often each constituent was hit, summed over runs.
    pub target_counts: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmplificationReport {
    pub rows: Vec<AmplificationRow>,
    /// Weighted fit of rate against `N`.
    pub fit: LinearFit,
    pub lambda: f64,
    pub duration: f64,
    pub runs: usize,
    pub model: AmplificationModel,
}

/// Event times and targets of one run.
fn run_events<R: Rng>(n: usize, lambda: f64, duration: f64, model: AmplificationModel, mut rng: R) -> Result<Vec<(f64, usize)>> {
    match model {
        AmplificationModel::UniformTarget => {
            let times = PoissonClock::new(n as f64 * lambda, &mut rng, 0.0)?.events_until(duration);
            Ok(times.into_iter().map(|t| (t, rng.random_range(0..n))).collect())
        }
        AmplificationModel::IndependentStreams => {
            let mut events = Vec::new();
            for k in 0..n {
                let mut clock = PoissonClock::new(lambda, &mut rng, 0.0)?;
                events.extend(clock.events_until(duration).into_iter().map(|t| (t, k)));
            }
            events.sort_by(|a, b| a.0.total_cmp(&b.0));
            Ok(events)
        }
    }
}

/// Simulates `runs` collision histories of length `duration` for each body size in
/// `n_list`, counts centre-of-mass localization events (every collision on any
/// constituent localizes the centre of mass) and fits the observed rate against `N`.
pub fn measure_amplification(
    n_list: &[usize],
    lambda: f64,
    duration: f64,
    runs: usize,
    seed: u64,
    model: AmplificationModel,
    exec: Execution,
) -> Result<AmplificationReport> {
    if runs < 100 {
        return Err(Error::invalid(format!("need at least 10² runs per N (got {runs})")));
    }
    if n_list.is_empty() || n_list.contains(&0) {
        return Err(Error::invalid("body sizes must be ≥ 1"));
    }
    if !(lambda > 0.0 && duration > 0.0) {
        return Err(Error::invalid(format!("need λ > 0 and T > 0 (got {lambda}, {duration})")));
    }
    let mut rows = Vec::with_capacity(n_list.len());
    for (row, &n) in n_list.iter().enumerate() {
        let base = rng::purpose::COLLISIONS + ((row as u64) << 24);
        let histories = exec.try_map(runs, |r| run_events(n, lambda, duration, model, rng::stream(seed, base + r as u64)))?;
        let counts: Vec<f64> = histories.iter().map(|h| h.len() as f64).collect();
        let mut target_counts = vec![0u64; n];
        for (_, k) in histories.iter().flatten() {
            target_counts[*k] += 1;
        }
        let rates: Vec<f64> = counts.iter().map(|c| c / duration).collect();
        let stderr = (variance(&rates) / runs as f64).sqrt().max(f64::MIN_POSITIVE);
        rows.push(AmplificationRow {
            n,
            fitted_rate: mean(&rates),
            stderr,
            mean_events: mean(&counts),
            target_counts,
        });
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.n as f64).collect();
    let ys: Vec<f64> = rows.iter().map(|r| r.fitted_rate).collect();
    let ss: Vec<f64> = rows.iter().map(|r| r.stderr).collect();
    let fit = weighted_linear_fit(&xs, &ys, &ss);
    Ok(AmplificationReport { rows, fit, lambda, duration, runs, model })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_particle_rate() {
        let r = measure_amplification(&[1], 1.0, 10.0, 400, 1, AmplificationModel::UniformTarget, Execution::Sequential).unwrap();
        let row = &r.rows[0];
        // Poisson: the mean rate over 400 runs of length 10 has σ = √(λ/(T·runs)) = 0.016
        assert!((row.fitted_rate - 1.0).abs() < 3.0 * 0.016, "{}", row.fitted_rate);
    }

    #[test]
    fn slope_is_per_particle_rate() {
        for model in [AmplificationModel::UniformTarget, AmplificationModel::IndependentStreams] {
            let r = measure_amplification(&[1, 2, 4, 8], 1.0, 10.0, 200, 7, model, Execution::default()).unwrap();
            assert!((r.fit.slope - 1.0).abs() < 0.1, "{model:?}: {:?}", r.fit);
        }
    }

    #[test]
    fn ten_particles_mean_count() {
        let r = measure_amplification(&[10], 1.0, 10.0, 200, 3, AmplificationModel::UniformTarget, Execution::Sequential).unwrap();
        let row = &r.rows[0];
        assert!((row.mean_events - 100.0).abs() < 10.0);
        // uniform targets: each constituent gets about a tenth of the hits
        let total: u64 = row.target_counts.iter().sum();
        for c in &row.target_counts {
            let p = *c as f64 / total as f64;
            assert!((p - 0.1).abs() < 4.0 * (0.09 / total as f64).sqrt());
        }
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let a = measure_amplification(&[1, 3], 2.0, 5.0, 100, 11, AmplificationModel::IndependentStreams, Execution::Sequential).unwrap();
        let b = measure_amplification(&[1, 3], 2.0, 5.0, 100, 11, AmplificationModel::IndependentStreams, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn too_few_runs_rejected() {
        assert!(measure_amplification(&[1], 1.0, 1.0, 10, 0, AmplificationModel::UniformTarget, Execution::Sequential).is_err());
    }
}
