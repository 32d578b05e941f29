//! One function per scenario. Each writes its data files into the scenario directory and
//! returns named verdicts.

use crate::config::{Scenario, ScenarioConfig};
use pilotwave::bath::{
    bath_packet, collision_trajectories, conditional_pair, localization_center_statistics, shear_evolution,
    BathParticleSpec, EnvironmentInputs, InteractionWindow,
};
use pilotwave::bohmian::{conditional_wavefunction, TrajectoryHistory};
use pilotwave::checks::{bath_grw_equivalence, bounce_run, run_suite, BounceSetup, SuiteOptions};
use pilotwave::classical::{
    bohmian_velocity_identity, fluctuation_statistics, newton_check, sde_evolve, GaussianMeanState, QmuplParams,
    RegimeReport, SdeOptions,
};
use pilotwave::com::{measure_amplification, AmplificationModel};
use pilotwave::grw::{collapse_center_pdf, evolve_grw, GrwParams};
use pilotwave::io;
use pilotwave::numerics::states::collision_state;
use pilotwave::rng::{self, purpose};
use pilotwave::stats::{Confidence, Histogram};
use pilotwave::{Execution, Grid1D, JointField2D, PotentialSpec, UnitsContext};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Verdict { name: name.into(), passed, detail: detail.into() }
    }
}

pub struct Outcome {
    pub verdicts: Vec<Verdict>,
    /// Human-readable summary for stdout; may carry timings.
    pub console: String,
}

type Run = pilotwave::Result<Outcome>;

fn exec(c: &ScenarioConfig) -> Execution {
    if c.parallel {
        Execution::default()
    } else {
        Execution::Sequential
    }
}

fn confidence(c: &ScenarioConfig) -> Confidence {
    if c.statistics.confidence == 95 {
        Confidence::P95
    } else {
        Confidence::P99
    }
}

fn file(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}

pub fn run(c: &ScenarioConfig, dir: &Path) -> Run {
    match c.scenario.expect("resolved config names its scenario") {
        Scenario::InterferenceBounce => interference_bounce(c, dir),
        Scenario::SingleCollision => single_collision(c, dir),
        Scenario::ZStatistics => z_statistics(c, dir),
        Scenario::GrwVsBath => grw_vs_bath(c, dir),
        Scenario::ComAmplification => com_amplification(c, dir),
        Scenario::ClassicalTrajectory => classical_trajectory(c, dir),
        Scenario::Estimates => estimates(c, dir),
        Scenario::VerifyAll => verify_all(c, dir),
    }
}

/// At most this many trajectory samples are written.
const MAX_SAMPLES: usize = 2000;

fn interference_bounce(c: &ScenarioConfig, dir: &Path) -> Run {
    let setup = BounceSetup {
        mu: c.state.mu,
        sigma: c.state.sigma,
        velocity: c.state.velocity,
        half_width: c.grid.half_width,
        points: c.grid.points,
        duration: c.grid.duration,
        dt: c.grid.dt,
        x_start: c.state.x_start,
    };
    let bath = if c.bath.enabled { Some(BathParticleSpec::new(c.bath.sigma, 0.0, c.bath.rate)?) } else { None };
    let run = bounce_run(&setup, bath.as_ref(), c.seed)?;
    let stride = run.times.len().div_ceil(MAX_SAMPLES).max(1);
    let mut history = TrajectoryHistory::default();
    for (i, (t, x)) in run.times.iter().zip(&run.positions).enumerate() {
        if i % stride == 0 || i + 1 == run.times.len() {
            history.times.push(*t);
            history.positions.push(vec![*x]);
        }
    }
    io::to_file(&file(dir, "trajectory.csv"), |w| io::write_trajectories(w, &history))?;
    io::to_file(&file(dir, "field.csv"), |w| io::write_field(w, &run.field))?;
    io::to_file(&file(dir, "collisions.csv"), |w| io::write_collisions(w, &run.collisions))?;
    let verdict = if c.bath.enabled {
        Verdict::new("crosses_midpoint", run.crosses_midpoint(), format!("collisions={}", run.collisions.len()))
    } else {
        Verdict::new("bounces", run.bounces(), "isolated")
    };
    let console = format!(
        "final_x={:.6} crosses={} bounces={} collisions={}\n",
        run.positions.last().expect("non-empty"),
        run.crosses_midpoint(),
        run.bounces(),
        run.collisions.len()
    );
    Ok(Outcome { verdicts: vec![verdict], console })
}

fn single_collision(c: &ScenarioConfig, dir: &Path) -> Run {
    let u = UnitsContext::natural();
    let gx = Grid1D::centered(c.grid.half_width, c.grid.points)?;
    let gy = Grid1D::centered(c.bath.y_half_width, c.bath.y_points)?;
    let system = collision_state(gx, c.state.mu, c.state.sigma, c.state.velocity, &u)?;
    let env = bath_packet(gy, c.bath.sigma, 0.0);
    let window = InteractionWindow::new(c.bath.t_i, c.bath.t_f)?;
    let t = c.grid.duration;
    let sheared = shear_evolution(&JointField2D::product(&system, &env), &window, t)?;
    let (x, y) = collision_trajectories(c.state.x_start, c.bath.y_start, &window, t);
    let on_grid = conditional_wavefunction(&sheared, y)?.field;
    let (closed, bath_side) = conditional_pair(&system, gy, c.bath.sigma, c.state.x_start, c.bath.y_start, &window, t)?;
    let sup = on_grid.sup_distance(&closed);
    io::to_file(&file(dir, "conditional_grid.csv"), |w| io::write_field(w, &on_grid))?;
    io::to_file(&file(dir, "conditional_closed.csv"), |w| io::write_field(w, &closed))?;
    io::to_file(&file(dir, "bath_conditional.csv"), |w| io::write_field(w, &bath_side))?;
    let mx = sheared.marginal_x();
    let my = sheared.marginal_y();
    io::to_file(&file(dir, "marginal_x.csv"), |w| io::write_columns(w, &[("x", &gx.points()), ("density", &mx.values)]))?;
    io::to_file(&file(dir, "marginal_y.csv"), |w| io::write_columns(w, &[("y", &gy.points()), ("density", &my.values)]))?;
    Ok(Outcome {
        verdicts: vec![Verdict::new("closed_form", sup < 1e-6, format!("sup_norm={sup:.3e}"))],
        console: format!("X={x:.6} Y={y:.6} sup_norm={sup:.3e}\n"),
    })
}

fn z_statistics(c: &ScenarioConfig, dir: &Path) -> Run {
    let u = UnitsContext::natural();
    let grid = Grid1D::centered(c.grid.half_width, c.grid.points)?;
    let psi = collision_state(grid, c.state.mu, c.state.sigma, c.state.velocity, &u)?;
    let mut r = rng::stream(c.seed, purpose::STATISTICS);
    let z = localization_center_statistics(&psi, c.bath.sigma, c.statistics.samples, confidence(c), &mut r)?;
    let pdf = collapse_center_pdf(&psi, std::f64::consts::SQRT_2 * c.bath.sigma)?;
    io::to_file(&file(dir, "z_samples.csv"), |w| io::write_columns(w, &[("z", &z.samples)]))?;
    io::to_file(&file(dir, "z_pdf.csv"), |w| io::write_columns(w, &[("z", &grid.points()), ("pdf", &pdf.values)]))?;
    write_histogram(&file(dir, "z_histogram.csv"), &z.histogram, z.samples.len())?;
    Ok(Outcome {
        verdicts: vec![Verdict::new("ks", z.ks.passed(), z.ks.to_string())],
        console: format!("{}\n", z.ks),
    })
}

fn write_histogram(path: &Path, h: &Histogram, n: usize) -> std::io::Result<()> {
    let bins = h.counts.len();
    let width = (h.hi - h.lo) / bins as f64;
    let centers: Vec<f64> = (0..bins).map(|i| h.lo + (i as f64 + 0.5) * width).collect();
    let density: Vec<f64> = h.counts.iter().map(|&k| k as f64 / (n as f64 * width)).collect();
    io::to_file(path, |w| io::write_columns(w, &[("center", &centers), ("density", &density)]))
}

fn grw_vs_bath(c: &ScenarioConfig, dir: &Path) -> Run {
    let u = UnitsContext::natural();
    let grid = Grid1D::centered(c.grid.half_width, c.grid.points)?;
    let psi0 = collision_state(grid, c.state.mu, c.state.sigma, c.state.velocity, &u)?;
    let bath = BathParticleSpec::new(c.bath.sigma, 0.0, c.bath.rate)?;
    let runs = c.statistics.samples;
    let r = bath_grw_equivalence(&psi0, &u, &bath, c.grid.duration, c.grid.dt, runs, c.seed, exec(c))?;
    io::to_file(&file(dir, "final_positions.csv"), |w| io::write_columns(w, &[("bath", &r.bath), ("grw", &r.grw)]))?;
    // first GRW realization again, for its event log and final field
    let params = GrwParams::new(bath.rate(), bath.equivalent_r_c(), 1.0)?;
    let first = evolve_grw(&psi0, &PotentialSpec::Free, &u, &params, c.grid.duration, c.grid.dt, &mut rng::stream(c.seed, purpose::GRW))?;
    io::to_file(&file(dir, "grw_events.csv"), |w| io::write_events(w, &first.events))?;
    io::to_file(&file(dir, "grw_field.csv"), |w| io::write_field(w, &first.field))?;
    let ks = if c.statistics.confidence == 95 { r.ks.clone() } else { pilotwave::stats::KsReport::two_sample(&r.bath, &r.grw, Confidence::P99) };
    Ok(Outcome {
        verdicts: vec![Verdict::new("ks", ks.passed(), ks.to_string())],
        console: format!("{ks}\n"),
    })
}

fn com_amplification(c: &ScenarioConfig, dir: &Path) -> Run {
    let a = &c.amplification;
    let model = match a.model.as_str() {
        "independent-streams" => AmplificationModel::IndependentStreams,
        _ => AmplificationModel::UniformTarget,
    };
    let r = measure_amplification(&a.sizes, a.lambda, a.duration, a.runs, c.seed, model, exec(c))?;
    io::to_file(&file(dir, "amplification.csv"), |w| io::write_amplification(w, &r.rows))?;
    let slope = r.fit.slope / r.lambda;
    Ok(Outcome {
        verdicts: vec![Verdict::new("slope", (slope - 1.0).abs() <= 0.1, format!("slope={slope:.4}"))],
        console: format!("slope={slope:.4} stderr={:.4}\n", r.fit.slope_stderr / r.lambda),
    })
}

fn potential(c: &ScenarioConfig) -> PotentialSpec {
    let k = c.classical.strength;
    match c.classical.potential.as_str() {
        "free" => PotentialSpec::Free,
        "linear" => PotentialSpec::Linear { slope: k },
        _ => PotentialSpec::Harmonic { k },
    }
}

fn classical_trajectory(c: &ScenarioConfig, dir: &Path) -> Run {
    let k = &c.classical;
    let params = QmuplParams::new(k.lambda, 1.0, k.mass, 1.0)?;
    let v = potential(c);
    let state = GaussianMeanState::asymptotic(&params, k.x0, k.v0 * k.mass);
    let options = if k.fluctuations { SdeOptions::stochastic(c.seed, 0) } else { SdeOptions::deterministic() };
    let path = sde_evolve(&state, &v, &params, k.duration, k.dt, options)?;
    io::to_file(&file(dir, "path.csv"), |w| io::write_path(w, &path))?;
    let mut verdicts = Vec::new();

    let (dq, _) = state.spreads();
    let reach = path.x_bar.iter().fold(0.0f64, |m, x| m.max(x.abs())) + 12.0 * dq;
    let points = ((2.0 * reach / dq) * 24.0).max(256.0) as usize;
    let grid = Grid1D::centered(reach, points.next_power_of_two())?;
    let id = bohmian_velocity_identity(&state, &path, grid)?;
    let bound = if k.fluctuations { 8.0 } else { 1.0 + 1e-6 };
    verdicts.push(Verdict::new(
        "velocity_identity",
        id.max_mean_velocity_error < 1e-6 && id.bounded(bound),
        format!("mean_velocity_err={:.2e} max_offset={:.3} min_separation={:.3e}", id.max_mean_velocity_error, id.max_offset, id.min_separation),
    ));
    if !k.fluctuations {
        let n = newton_check(&v, &params, k.x0, k.v0, k.duration, k.dt)?;
        verdicts.push(Verdict::new("newton", n.max_residual < 1e-3, format!("max_residual={:.3e}", n.max_residual)));
        let len = n.accelerations.len();
        io::to_file(&file(dir, "newton.csv"), |w| {
            io::write_columns(w, &[("t", &path.times[1..=len]), ("acceleration", &n.accelerations), ("force", &n.forces)])
        })?;
    }

    let sphere = QmuplParams::sphere_in_atmosphere();
    let regime = RegimeReport::new(sphere, 1e-3, 1e-3)?;
    std::fs::write(file(dir, "regime.txt"), regime.to_string())?;
    let f = fluctuation_statistics(&sphere, 1.0, 1e-3, k.paths.max(2), c.seed, exec(c))?;
    verdicts.push(Verdict::new("fluctuations", f.worst_factor() < 2.0, format!("worst_factor={:.3}", f.worst_factor())));
    Ok(Outcome {
        console: format!("{regime}linearization_warnings={}\n", path.linearization_warnings),
        verdicts,
    })
}

fn estimates(c: &ScenarioConfig, dir: &Path) -> Run {
    let e = &c.environment;
    let inputs = EnvironmentInputs { m_gas: e.m_gas, temperature: e.temperature, pressure: e.pressure, radius: e.radius };
    inputs.validate()?;
    let est = inputs.estimate();
    std::fs::write(file(dir, "estimates.txt"), est.render())?;
    let mut verdicts = Vec::new();
    if inputs == EnvironmentInputs::atmosphere() {
        let ok = (est.eta / 3.6e22 - 1.0).abs() <= 0.03;
        verdicts.push(Verdict::new("eta", ok, format!("eta={:.3e}", est.eta)));
    }
    Ok(Outcome { verdicts, console: est.render() })
}

fn verify_all(c: &ScenarioConfig, dir: &Path) -> Run {
    let options = SuiteOptions { seed: c.seed, exec: exec(c), norm_drift: c.verify.inject_norm_drift };
    let report = run_suite(&options, &c.verify.only)?;
    std::fs::write(file(dir, "verify.txt"), report.render())?;
    let verdicts = report
        .outcomes
        .iter()
        .map(|o| Verdict::new(&format!("{:02}-{}", o.id, o.name), o.passed, o.detail.clone()))
        .collect();
    Ok(Outcome { verdicts, console: report.render_with_timings() })
}
