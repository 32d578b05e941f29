//! Desk-scale verification suite: eleven numbered checks, each a pass/fail verdict with a
//! one-line detail and its wall-clock time against a budget.
//!
//! The same functions back the `verify` command of the CLI and the `acceptance` test
//! target. Every random draw goes through [`rng::stream`], so a given seed always yields
//! the same verdicts and details (timings aside).

use crate::bath::{multi_collision_run, BathParticleSpec, CollisionRecord, EnvironmentInputs, InteractionWindow, RunOptions};
use crate::bath::{bath_packet, collision_trajectories, conditional_pair, localization_center_statistics, shear_evolution, CenterShifts};
use crate::bohmian::{advance_ensemble, conditional_wavefunction, ordering_preserved, verify_equivariance_at, DensityMatrix1D};
use crate::bohmian::{TrajectoryEnsemble, VelocityEvaluator};
use crate::classical::{classical_time, collapse_time, fluctuation_statistics, newton_check};
use crate::classical::{sde_evolve, GaussianMeanState, QmuplParams, SdeOptions};
use crate::com::{measure_amplification, AmplificationModel};
use crate::grw::{apply_localization, evolve_grw, evolve_with_collapses, master_equation_evolve, sample_collapse_center};
use crate::grw::{GrwParams, PoissonClock};
use crate::numerics::states::{collision_state, gaussian_packet, superpose};
use crate::numerics::{spreads, split_step_propagate, DensityCdf, SplitStepPropagator};
use crate::rng::{self, purpose};
use crate::stats::{weighted_linear_fit, Confidence, KsReport};
use crate::{ComplexField1D, Error, Execution, Grid1D, JointField2D, PotentialSpec, Result, UnitsContext};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::time::{Duration, Instant};

pub const CHECK_COUNT: u8 = 11;

/// Settings shared by all checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteOptions {
    pub seed: u64,
    pub exec: Execution,
    /// Relative norm error injected into the norm-conservation property (fault injection).
    pub norm_drift: f64,
}

impl SuiteOptions {
    pub fn new(seed: u64) -> Self {
        SuiteOptions { seed, exec: Execution::default(), norm_drift: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CheckOutcome {
    /// Verdict line without timing, stable across reruns with the same seed.
    pub fn verdict_line(&self) -> String {
        format!(
            "{:>2} {:<24} {} {}",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.detail
        )
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{:.3?} of {:?}]",
            self.verdict_line(),
            self.elapsed,
            self.budget
        )
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SuiteReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.passed)
    }

    /// Pass/fail matrix without timings.
    pub fn render(&self) -> String {
        self.outcomes.iter().map(|o| o.verdict_line() + "\n").collect()
    }

    pub fn render_with_timings(&self) -> String {
        self.outcomes.iter().map(|o| format!("{o}\n")).collect()
    }
}

/// Name and runtime budget of check `id`.
pub fn check_info(id: u8) -> Option<(&'static str, Duration)> {
    let (name, secs) = match id {
        1 => ("estimates", 1e-3),
        2 => ("regime-timescales", 1e-3),
        3 => ("equivariance", 60.0),
        4 => ("z-statistics", 30.0),
        5 => ("conditional-closed-form", 10.0),
        6 => ("grw-unraveling", 300.0),
        7 => ("bath-grw-equivalence", 300.0),
        8 => ("amplification", 60.0),
        9 => ("classicalization", 60.0),
        10 => ("newton-recovery", 120.0),
        11 => ("property-suites", 120.0),
        _ => return None,
    };
    Some((name, Duration::from_secs_f64(secs)))
}

/// Runs check `id` (1 to 11).
pub fn run_check(id: u8, options: &SuiteOptions) -> Result<CheckOutcome> {
    let (name, budget) = check_info(id).ok_or_else(|| Error::invalid(format!("no check numbered {id}")))?;
    let start = Instant::now();
    let result = match id {
        1 => check_estimates(),
        2 => check_regime(),
        3 => check_equivariance(options),
        4 => check_z_statistics(options),
        5 => check_conditional(),
        6 => check_unraveling(options),
        7 => check_bath_equivalence(options),
        8 => check_amplification(options),
        9 => check_classicalization(options),
        10 => check_newton(options),
        _ => check_properties(options),
    };
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match result {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    if elapsed > budget {
        passed = false;
        detail.push_str(" over-budget");
    }
    Ok(CheckOutcome { id, name, passed, detail, elapsed, budget })
}

/// Runs the listed checks in order (all of them when `only` is empty).
pub fn run_suite(options: &SuiteOptions, only: &[u8]) -> Result<SuiteReport> {
    let ids: Vec<u8> = if only.is_empty() { (1..=CHECK_COUNT).collect() } else { only.to_vec() };
    let outcomes = ids.iter().map(|&id| run_check(id, options)).collect::<Result<_>>()?;
    Ok(SuiteReport { outcomes })
}

fn within(value: f64, target: f64, rel: f64) -> bool {
    (value / target - 1.0).abs() <= rel
}

type Verdict = Result<(bool, String)>;

fn check_estimates() -> Verdict {
    let e = EnvironmentInputs::atmosphere().estimate();
    let ok = within(e.lambda_th, 3.0e-12, 0.02)
        && within(e.n, 2.46e25, 0.01)
        && within(e.v_bar, 472.0, 0.01)
        && within(e.eta, 3.6e22, 0.03);
    Ok((
        ok,
        format!("lambda_th={:.3e} n={:.3e} v_bar={:.1} eta={:.3e}", e.lambda_th, e.n, e.v_bar, e.eta),
    ))
}

fn check_regime() -> Verdict {
    let p = QmuplParams::sphere_in_atmosphere();
    let t_c = collapse_time(1e-3, &p)?;
    let t_cl = classical_time(1e-3, &p)? / 60.0;
    let (dq, _) = GaussianMeanState::asymptotic(&p, 0.0, 0.0).spreads();
    let ok = (5e-40..=1e-39).contains(&t_c) && (40.0..=50.0).contains(&t_cl) && (1e-14 / 3.0..=3e-14).contains(&dq);
    Ok((ok, format!("t_c={t_c:.3e}s t_cl={t_cl:.2}min delta_q={dq:.3e}m")))
}

/// Critical KS value for 10⁴ samples at 99%.
const EQUIVARIANCE_KS_LIMIT: f64 = 0.0163;

fn check_equivariance(o: &SuiteOptions) -> Verdict {
    let u = UnitsContext::natural();
    let grid = Grid1D::centered(40.0, 1024)?;
    let free = gaussian_packet(grid, 0.0, 1.0, 0.5, &u)?;
    let double = collision_state(grid, 5.0, 1.0, 2.0, &u)?;
    let mut ok = true;
    let mut detail = Vec::new();
    for (label, psi, times) in [("free", &free, [1.0, 2.0, 3.0]), ("double", &double, [1.5, 2.5, 3.5])] {
        let r = verify_equivariance_at(psi, &PotentialSpec::Free, &u, 10_000, &times, 1e-3, o.seed, o.exec)?;
        let worst = r.worst();
        ok &= worst < EQUIVARIANCE_KS_LIMIT && r.no_crossing;
        detail.push(format!("{label}_ks_max={worst:.5}"));
    }
    detail.push(format!("limit={EQUIVARIANCE_KS_LIMIT}"));
    Ok((ok, detail.join(" ")))
}

fn check_z_statistics(o: &SuiteOptions) -> Verdict {
    let u = UnitsContext::natural();
    let grid = Grid1D::centered(20.0, 1024)?;
    let psi = collision_state(grid, 3.0, 1.0, 0.5, &u)?;
    let mut r = rng::stream(o.seed, purpose::STATISTICS);
    let z = localization_center_statistics(&psi, 1.0, 10_000, Confidence::P99, &mut r)?;
    Ok((z.ks.passed(), z.ks.to_string()))
}

fn check_conditional() -> Verdict {
    let u = UnitsContext::natural();
    let gx = Grid1D::new(-8.0, 8.0, 512)?;
    let gy = Grid1D::new(-20.0, 20.0, 512)?;
    let s = collision_state(gx, 2.0, 0.8, 0.5, &u)?;
    let e = bath_packet(gy, 1.0, 0.0);
    let joint = JointField2D::product(&s, &e);
    let w = InteractionWindow::new(0.0, 1.0)?;
    let mut worst = 0.0f64;
    for &(x0, y0, t) in &[(1.7, -0.4, 1.0), (-2.1, 0.9, 0.5), (0.3, 1.3, 2.0), (-1.2, -1.1, 0.8)] {
        let sheared = shear_evolution(&joint, &w, t)?;
        let (_, y) = collision_trajectories(x0, y0, &w, t);
        let on_grid = conditional_wavefunction(&sheared, y)?.field;
        let (closed, _) = conditional_pair(&s, gy, 1.0, x0, y0, &w, t)?;
        worst = worst.max(on_grid.sup_distance(&closed));
    }
    Ok((worst < 1e-6, format!("sup_norm={worst:.3e} limit=1e-6 grid=512x512")))
}

/// Collapse-only unraveling: Poisson localizations with no Hamiltonian part. Returns the
/// realization average of `ψ(x_i)ψ*(x_j)` for each pair at each time.
#[allow(clippy::too_many_arguments)]
pub fn collapse_only_coherences(
    psi0: &ComplexField1D,
    rate: f64,
    r_c: f64,
    times: &[f64],
    pairs: &[(usize, usize)],
    realizations: usize,
    seed: u64,
    exec: Execution,
) -> Result<Vec<Vec<Complex64>>> {
    let t_end = times.iter().copied().fold(0.0, f64::max);
    let per_run = exec.try_map(realizations, |r| {
        let mut g = rng::stream(seed, purpose::STATISTICS + r as u64);
        let events = PoissonClock::new(rate, &mut g, 0.0)?.events_until(t_end);
        let mut psi = psi0.clone();
        let mut next = 0;
        let mut out = Vec::with_capacity(times.len());
        for &t in times {
            while next < events.len() && events[next] < t {
                let z = sample_collapse_center(&psi, r_c, &mut g)?;
                psi = apply_localization(&psi, z, r_c)?.0;
                next += 1;
            }
            out.push(pairs.iter().map(|&(i, j)| psi.values[i] * psi.values[j].conj()).collect::<Vec<_>>());
        }
        Ok::<_, Error>(out)
    })?;
    let mut mean = vec![vec![Complex64::new(0.0, 0.0); pairs.len()]; times.len()];
    for run in &per_run {
        for (m, v) in mean.iter_mut().zip(run) {
            for (a, b) in m.iter_mut().zip(v) {
                *a += b;
            }
        }
    }
    let scale = 1.0 / realizations as f64;
    mean.iter_mut().flatten().for_each(|a| *a *= scale);
    Ok(mean)
}

/// Realization average of `|ψ_T⟩⟨ψ_T|` over GRW runs, summed in a fixed order.
#[allow(clippy::too_many_arguments)]
pub fn unraveled_density_matrix(
    psi0: &ComplexField1D,
    potential: &PotentialSpec,
    units: &UnitsContext,
    params: &GrwParams,
    duration: f64,
    dt: f64,
    realizations: usize,
    seed: u64,
    exec: Execution,
) -> Result<DensityMatrix1D> {
    const CHUNK: usize = 100;
    let chunks = realizations.div_ceil(CHUNK);
    let partial = exec.try_map(chunks, |c| {
        let mut rho = DensityMatrix1D::zeros(psi0.grid)?;
        for r in c * CHUNK..((c + 1) * CHUNK).min(realizations) {
            let mut g = rng::stream(seed, purpose::GRW + r as u64);
            let run = evolve_grw(psi0, potential, units, params, duration, dt, &mut g)?;
            rho.add_pure(&run.field, 1.0);
        }
        Ok::<_, Error>(rho)
    })?;
    let mut rho = DensityMatrix1D::zeros(psi0.grid)?;
    for p in &partial {
        rho.add_scaled(p, 1.0 / realizations as f64);
    }
    Ok(rho)
}

fn check_unraveling(o: &SuiteOptions) -> Verdict {
    let u = UnitsContext::natural();
    let grid = Grid1D::centered(16.0, 128)?;
    let left = gaussian_packet(grid, -4.0, 1.0, 0.0, &u)?;
    let right = gaussian_packet(grid, 4.0, 1.0, 0.0, &u)?;
    let one = Complex64::new(1.0, 0.0);
    let psi0 = superpose(&[(one, &left), (one, &right)])?;
    let (lambda, r_c, duration, dt) = (1.0, 1.0, 1.0, 1e-3);
    let params = GrwParams::new(lambda, r_c, 1.0)?;

    let mc = unraveled_density_matrix(&psi0, &PotentialSpec::Free, &u, &params, duration, dt, 10_000, o.seed, o.exec)?;
    let exact = master_equation_evolve(&DensityMatrix1D::from_pure(&psi0)?, &PotentialSpec::Free, &u, &params, duration, dt)?;
    let deviation = mc.max_abs_diff(&exact);

    // coherence across the lobes (Δx = 8) and inside one lobe (Δx = 2)
    let index = |x: f64| grid.fractional_index(x).round() as usize;
    let pairs = [(index(-4.0), index(4.0)), (index(-5.0), index(-3.0))];
    let times: Vec<f64> = (1..=10).map(|k| 0.1 * k as f64).collect();
    let coh = collapse_only_coherences(&psi0, lambda, r_c, &times, &pairs, 10_000, o.seed, o.exec)?;
    let mut ok = deviation < 0.05;
    let mut detail = vec![format!("max_entry_dev={deviation:.4}")];
    for (p, &(i, j)) in pairs.iter().enumerate() {
        let start = psi0.values[i] * psi0.values[j].conj();
        let ys: Vec<f64> = coh.iter().map(|row| (row[p].norm() / start.norm()).ln()).collect();
        let fit = weighted_linear_fit(&times, &ys, &vec![1.0; times.len()]);
        let dx = grid.x(j) - grid.x(i);
        let expected = lambda * (1.0 - (-dx * dx / (4.0 * r_c * r_c)).exp());
        let rate = -fit.slope;
        ok &= within(rate, expected, 0.05);
        detail.push(format!("decay(dx={:.0})={rate:.4}/{expected:.4}", dx.abs()));
    }
    Ok((ok, detail.join(" ")))
}

/// Bath and GRW final-position samples for the equivalence comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceSamples {
    pub bath: Vec<f64>,
    pub grw: Vec<f64>,
    pub ks: KsReport,
}

/// Runs `runs` multi-collision histories (trajectory started from `|ψ0|²`) and `runs`
/// GRW realizations with `λ = μ`, `r_C = √2σ`, then compares the bath trajectory endpoints
/// with Born samples of the GRW final states (two-sample KS at 95%).
#[allow(clippy::too_many_arguments)]
pub fn bath_grw_equivalence(
    psi0: &ComplexField1D,
    units: &UnitsContext,
    bath: &BathParticleSpec,
    duration: f64,
    dt: f64,
    runs: usize,
    seed: u64,
    exec: Execution,
) -> Result<EquivalenceSamples> {
    let starts = TrajectoryEnsemble::sample_equilibrium(psi0, runs, seed, 0.0)?;
    let bath_final = exec.try_map(runs, |r| {
        let mut g = rng::stream(seed, purpose::COLLISIONS + r as u64);
        let run = multi_collision_run(
            psi0,
            &PotentialSpec::Free,
            units,
            bath,
            starts.positions[r],
            duration,
            dt,
            &mut g,
            &RunOptions::default(),
        )?;
        Ok::<_, Error>(run.final_position())
    })?;
    let params = GrwParams::new(bath.rate(), bath.equivalent_r_c(), 1.0)?;
    let grw_final = exec.try_map(runs, |r| {
        let mut g = rng::stream(seed, purpose::GRW + r as u64);
        let run = evolve_grw(psi0, &PotentialSpec::Free, units, &params, duration, dt, &mut g)?;
        let cdf = DensityCdf::new(&run.field.density())?;
        Ok::<_, Error>(cdf.sample(&mut rng::stream(seed, purpose::BORN_SAMPLE + r as u64)))
    })?;
    let ks = KsReport::two_sample(&bath_final, &grw_final, Confidence::P95);
    Ok(EquivalenceSamples { bath: bath_final, grw: grw_final, ks })
}

fn check_bath_equivalence(o: &SuiteOptions) -> Verdict {
    let u = UnitsContext::natural();
    let grid = Grid1D::centered(16.0, 256)?;
    let psi0 = collision_state(grid, 3.0, 1.0, 1.0, &u)?;
    let bath = BathParticleSpec::new(1.0, 0.0, 2.0)?;
    let r = bath_grw_equivalence(&psi0, &u, &bath, 2.5, 5e-4, 1000, o.seed, o.exec)?;
    Ok((r.ks.passed(), r.ks.to_string()))
}

fn check_amplification(o: &SuiteOptions) -> Verdict {
    let r = measure_amplification(&[1, 2, 4, 8], 1.0, 10.0, 400, o.seed, AmplificationModel::UniformTarget, o.exec)?;
    let slope = r.fit.slope / r.lambda;
    Ok(((slope - 1.0).abs() <= 0.1, format!("slope={slope:.4}±{:.4} target=1.0±0.1", r.fit.slope_stderr / r.lambda)))
}

/// Head-on collision of two packets, the `interference-bounce` setting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BounceSetup {
    pub mu: f64,
    pub sigma: f64,
    pub velocity: f64,
    pub half_width: f64,
    pub points: usize,
    pub duration: f64,
    pub dt: f64,
    pub x_start: f64,
}

impl Default for BounceSetup {
    fn default() -> Self {
        BounceSetup { mu: 5.0, sigma: 1.0, velocity: 2.0, half_width: 40.0, points: 1024, duration: 5.0, dt: 2e-4, x_start: -5.0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BounceRun {
    pub times: Vec<f64>,
    pub positions: Vec<f64>,
    pub field: ComplexField1D,
    pub collisions: Vec<CollisionRecord>,
}

impl BounceRun {
    /// The trajectory reaches the far side of the midpoint `x = 0`.
    pub fn crosses_midpoint(&self) -> bool {
        let side = self.positions[0].signum();
        self.positions.iter().any(|x| x.signum() == -side && *x != 0.0)
    }

    /// Stays on its starting side and turns back: the closest approach to the midpoint
    /// comes before the end of the run.
    pub fn bounces(&self) -> bool {
        let closest = self.positions.iter().fold(f64::INFINITY, |a, x| a.min(x.abs()));
        let last = self.positions.last().expect("non-empty").abs();
        !self.crosses_midpoint() && last > closest + 1e-6
    }
}

/// One trajectory of the head-on collision, with the conditional field hit by bath
/// particles when `bath` is given.
pub fn bounce_run(setup: &BounceSetup, bath: Option<&BathParticleSpec>, seed: u64) -> Result<BounceRun> {
    let u = UnitsContext::natural();
    let grid = Grid1D::centered(setup.half_width, setup.points)?;
    let psi0 = collision_state(grid, setup.mu, setup.sigma, setup.velocity, &u)?;
    let steps = (setup.duration / setup.dt).round() as usize;
    if let Some(b) = bath {
        let mut g = rng::stream(seed, purpose::COLLISIONS);
        let run =
            multi_collision_run(&psi0, &PotentialSpec::Free, &u, b, setup.x_start, setup.duration, setup.dt, &mut g, &RunOptions::default())?;
        return Ok(BounceRun { times: run.times, positions: run.positions, field: run.field, collisions: run.collisions });
    }
    let prop = SplitStepPropagator::new(grid, &PotentialSpec::Free, &u, setup.dt)?;
    let eval = VelocityEvaluator::new(grid, u);
    let mut psi = psi0;
    let mut frame = eval.frame(&psi, 0.0);
    let mut x = setup.x_start;
    let mut times = vec![0.0];
    let mut positions = vec![x];
    for s in 1..=steps {
        let t = s as f64 * setup.dt;
        prop.step(&mut psi.values);
        let next = eval.frame(&psi, t);
        x = crate::bohmian::advance_point(x, &frame, &next);
        frame = next;
        times.push(t);
        positions.push(x);
    }
    psi.ensure_finite("bounce run")?;
    Ok(BounceRun { times, positions, field: psi, collisions: Vec::new() })
}

/// Bath used for the classicalized run: packets of width 2 arriving at rate 5.
pub fn classicalizing_bath() -> BathParticleSpec {
    BathParticleSpec::new(2.0, 0.0, 5.0).expect("fixed bath parameters")
}

fn check_classicalization(o: &SuiteOptions) -> Verdict {
    let setup = BounceSetup::default();
    let isolated = bounce_run(&setup, None, o.seed)?;
    let bathed = bounce_run(&setup, Some(&classicalizing_bath()), o.seed)?;
    let ok = isolated.bounces() && bathed.crosses_midpoint();
    Ok((
        ok,
        format!(
            "isolated_bounces={} bathed_crosses={} bathed_collisions={} bathed_final_x={:.3}",
            isolated.bounces(),
            bathed.crosses_midpoint(),
            bathed.collisions.len(),
            bathed.positions.last().expect("non-empty")
        ),
    ))
}

fn check_newton(o: &SuiteOptions) -> Verdict {
    let p = QmuplParams::natural();
    let period = 2.0 * std::f64::consts::PI;
    let n = newton_check(&PotentialSpec::Harmonic { k: 1.0 }, &p, 1.0, 0.0, period, period / 1000.0)?;
    let f = fluctuation_statistics(&QmuplParams::sphere_in_atmosphere(), 1.0, 1e-3, 1000, o.seed, o.exec)?;
    let ok = n.max_residual < 1e-3 && f.worst_factor() < 2.0;
    Ok((
        ok,
        format!(
            "newton_residual={:.3e} rms_x_wiener={:.3e}/{:.3e} rms_x_int={:.3e}/{:.3e} rms_v={:.3e}/{:.3e} worst_factor={:.3}",
            n.max_residual,
            f.rms_x_wiener,
            f.predicted_x_wiener,
            f.rms_x_integrated,
            f.predicted_x_integrated,
            f.rms_v,
            f.predicted_v,
            f.worst_factor()
        ),
    ))
}

fn hash_bytes(bytes: &[u8]) -> u64 {
    let mut h = DefaultHasher::new();
    bytes.hash(&mut h);
    h.finish()
}

/// CSV bytes of a short stochastic GRW run, a bath run and a noisy mean path.
pub fn determinism_probe(seed: u64, exec: Execution) -> Result<Vec<u8>> {
    let u = UnitsContext::natural();
    let grid = Grid1D::centered(16.0, 256)?;
    let psi0 = collision_state(grid, 3.0, 1.0, 1.0, &u)?;
    let mut out = Vec::new();
    let runs = exec.try_map(8, |r| {
        evolve_with_collapses(&psi0, &PotentialSpec::Free, &u, 2.0, 1.0, 1.0, 5e-4, &mut rng::stream(seed, purpose::GRW + r as u64))
    })?;
    for run in &runs {
        crate::io::write_field(&mut out, &run.field)?;
        crate::io::write_events(&mut out, &run.events)?;
    }
    let bath = BathParticleSpec::new(1.0, 0.0, 2.0)?;
    let b = multi_collision_run(&psi0, &PotentialSpec::Free, &u, &bath, -3.0, 1.0, 5e-4, &mut rng::stream(seed, purpose::COLLISIONS), &RunOptions::default())?;
    crate::io::write_collisions(&mut out, &b.collisions)?;
    crate::io::write_columns(&mut out, &[("t", &b.times), ("x", &b.positions)])?;
    let p = QmuplParams::natural();
    let path = sde_evolve(&GaussianMeanState::asymptotic(&p, 0.0, 0.0), &PotentialSpec::Free, &p, 1.0, 1e-3, SdeOptions::stochastic(seed, 0))?;
    crate::io::write_path(&mut out, &path)?;
    Ok(out)
}

fn check_properties(o: &SuiteOptions) -> Verdict {
    let u = UnitsContext::natural();
    let setup = BounceSetup::default();
    let grid = Grid1D::centered(setup.half_width, setup.points)?;
    let psi0 = collision_state(grid, setup.mu, setup.sigma, setup.velocity, &u)?;
    let mut results: Vec<(&str, bool, String)> = Vec::new();

    // no crossing, and relabelling the trajectories only relabels the results
    let dt = 1e-3;
    let (frames, _) = crate::bohmian::record_frames(&psi0, &PotentialSpec::Free, &u, dt, 4000, true, |_, _| {})?;
    let ens = TrajectoryEnsemble::sample_equilibrium(&psi0, 1000, o.seed, 0.0)?;
    let mut perm: Vec<usize> = (0..ens.len()).collect();
    perm.shuffle(&mut rng::stream(o.seed, purpose::STATISTICS));
    let permuted = TrajectoryEnsemble::from_positions(perm.iter().map(|&i| ens.positions[i]).collect(), 0.0);
    let a = advance_ensemble(&ens, &frames, o.exec)?;
    let b = advance_ensemble(&permuted, &frames, o.exec)?;
    let relabelled = perm.iter().enumerate().all(|(k, &i)| a.positions[i] == b.positions[k]);
    let ordered = ordering_preserved(&ens.positions, &a.positions);
    results.push(("no_crossing", relabelled && ordered, format!("ordered={ordered} permutation_invariant={relabelled}")));

    // norm conservation: Schrödinger steps and GRW renormalization
    let mut evolved = split_step_propagate(&psi0, &PotentialSpec::Free, &u, dt, 5000)?;
    if o.norm_drift != 0.0 {
        let s = (1.0 + o.norm_drift).sqrt();
        evolved.values.iter_mut().for_each(|a| *a *= s);
    }
    let grw = evolve_with_collapses(&psi0, &PotentialSpec::Free, &u, 5.0, 1.0, 2.0, 2e-4, &mut rng::stream(o.seed, purpose::GRW))?;
    let drift = (evolved.norm_sqr() - 1.0).abs().max((grw.field.norm_sqr() - 1.0).abs());
    results.push(("norm", drift < 1e-8, format!("drift={drift:.2e}")));

    // uncertainty product of the asymptotic Gaussian
    let mut worst_product = 0.0f64;
    for (lambda, mass) in [(1.0, 1.0), (4.0, 25.0), (0.25, 0.5)] {
        let p = QmuplParams::new(lambda, 1.0, mass, 1.0)?;
        let state = GaussianMeanState::asymptotic(&p, 0.3, 0.7);
        let (dq, _) = state.spreads();
        let g = Grid1D::centered(20.0 * dq, 1024)?;
        let (mq, mp) = spreads(&state.render(g)?, &UnitsContext::natural_with_mass(mass)?)?;
        worst_product = worst_product.max((mq * mp - std::f64::consts::FRAC_1_SQRT_2).abs());
    }
    results.push(("uncertainty", worst_product < 1e-10, format!("dev={worst_product:.2e}")));

    // bath packet centres drop out of the conditional dynamics
    let bath = BathParticleSpec::new(2.0, 0.0, 5.0)?;
    let run = |centers| {
        multi_collision_run(&psi0, &PotentialSpec::Free, &u, &bath, setup.x_start, 1.0, 2e-4, &mut rng::stream(o.seed, purpose::COLLISIONS), &RunOptions { snapshot_every: None, centers })
    };
    let fixed = run(CenterShifts::Fixed)?;
    let shifted = run(CenterShifts::Uniform { half_width: 50.0, seed: o.seed })?;
    let shift = fixed.positions.iter().zip(&shifted.positions).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
    results.push(("center_cancellation", shift < 1e-10, format!("max_shift={shift:.2e}")));

    // reruns and execution modes give identical bytes
    let first = determinism_probe(o.seed, o.exec)?;
    let second = determinism_probe(o.seed, o.exec)?;
    let sequential = determinism_probe(o.seed, Execution::Sequential)?;
    let same = first == second && first == sequential;
    results.push(("determinism", same, format!("hash={:016x}", hash_bytes(&first))));

    let ok = results.iter().all(|r| r.1);
    let detail = results
        .iter()
        .map(|(n, p, d)| format!("{n}={}({d})", if *p { "pass" } else { "fail" }))
        .collect::<Vec<_>>()
        .join(" ");
    Ok((ok, detail))
}
