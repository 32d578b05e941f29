use super::trajectory::{advance_ensemble, record_frames, TrajectoryEnsemble};
use crate::exec::Execution;
use crate::numerics::{ComplexField1D, DensityCdf, PotentialSpec, UnitsContext};
use crate::stats::{Confidence, KsReport};
use crate::{Error, Result};
use std::fmt;

/// KS comparison of transported equilibrium samples against `|ψ(·,t)|²` at each
/// requested time.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivarianceReport {
    pub entries: Vec<(f64, KsReport)>,
    /// Whether the trajectory order was preserved over the whole run.
    pub no_crossing: bool,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|(_, r)| r.passed())
    }

    pub fn worst(&self) -> f64 {
        self.entries.iter().map(|(_, r)| r.statistic).fold(0.0, f64::max)
    }
}

impl fmt::Display for EquivarianceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, r) in &self.entries {
            writeln!(f, "t={t:.6} {r}")?;
        }
        write!(f, "no_crossing={}", self.no_crossing)
    }
}

/// Samples `n` points from `|ψ0|²`, transports them with the guidance equation and
/// compares with `|ψ(·,t)|²` at every entry of `times` (99% KS).
#[allow(clippy::too_many_arguments)]
pub fn verify_equivariance_at(
    psi0: &ComplexField1D,
    potential: &PotentialSpec,
    units: &UnitsContext,
    n: usize,
    times: &[f64],
    dt: f64,
    seed: u64,
    exec: Execution,
) -> Result<EquivarianceReport> {
    if n < 1000 {
        return Err(Error::invalid(format!("equivariance needs n ≥ 1000 trajectories (got {n})")));
    }
    if dt <= 0.0 || times.iter().any(|t| !(*t >= 0.0 && t.is_finite())) {
        return Err(Error::invalid("times must be finite and non-negative with dt > 0"));
    }
    let mut checkpoints: Vec<usize> = times.iter().map(|t| (t / dt).round() as usize).collect();
    checkpoints.sort_unstable();
    let steps = checkpoints.last().copied().unwrap_or(0);

    let mut snapshots = Vec::new();
    let (frames, _) = record_frames(psi0, potential, units, dt, steps, true, |s, psi| {
        if checkpoints.binary_search(&s).is_ok() {
            snapshots.push((s, psi.density()));
        }
    })?;

    let mut ensemble = TrajectoryEnsemble::sample_equilibrium(psi0, n, seed, 0.0)?;
    let initial = ensemble.positions.clone();
    let mut no_crossing = true;
    let mut entries = Vec::with_capacity(checkpoints.len());
    let mut at = 0usize;
    for (s, rho) in snapshots {
        if s > at {
            ensemble = advance_ensemble(&ensemble, &frames[at..=s], exec)?;
            at = s;
            no_crossing &= super::ordering_preserved(&initial, &ensemble.positions);
        }
        let cdf = DensityCdf::new(&rho)?;
        let report = KsReport::one_sample(&ensemble.positions, |x| cdf.cdf(x), Confidence::P99);
        entries.push((s as f64 * dt, report));
    }
    Ok(EquivarianceReport { entries, no_crossing })
}

pub fn verify_equivariance(
    psi0: &ComplexField1D,
    potential: &PotentialSpec,
    units: &UnitsContext,
    n: usize,
    t: f64,
    seed: u64,
) -> Result<KsReport> {
    let dt = (t / 1000.0).clamp(1e-4, 2e-3);
    let report = verify_equivariance_at(psi0, potential, units, n, &[t], dt, seed, Execution::default())?;
    Ok(report.entries[0].1.clone())
}
