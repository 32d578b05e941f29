//! `pilotwave` command line: scenario runs, SI estimates and the verification suite.
//!
//! Exit status is 0 when every check of the invocation passed, 1 when one failed or the
//! simulation hit a domain error, and 2 for usage and configuration errors.

mod config;
mod manifest;
mod plots;
mod scenarios;

use clap::{Parser, Subcommand, ValueEnum};
use config::{resolve, Scenario};
use pilotwave::bath::EnvironmentInputs;
use pilotwave::checks::{check_info, run_suite, SuiteOptions};
use pilotwave::Execution;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "pilotwave", version, about = "Bohmian trajectories, GRW collapse and bath-induced classicalization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Gas {
    N2,
}

impl Gas {
    fn molecule_mass(self) -> f64 {
        match self {
            Gas::N2 => EnvironmentInputs::atmosphere().m_gas,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write its data, plot script and manifest under OUT/<scenario>.
    Run {
        #[arg(long, value_enum)]
        scenario: Option<Scenario>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the gas and collision estimates for a sphere in a gas (SI).
    #[command(allow_negative_numbers = true)]
    Estimates {
        #[arg(long, value_enum, default_value = "n2")]
        gas: Gas,
        /// Sphere radius (m).
        #[arg(long, default_value_t = 1e-3)]
        radius: f64,
        /// Temperature (K).
        #[arg(long, default_value_t = 298.0)]
        temp: f64,
        /// Pressure (Pa).
        #[arg(long, default_value_t = 101_325.0)]
        pressure: f64,
    },
    /// Run the verification suite and print the pass/fail matrix.
    Verify {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Comma-separated check numbers (default: all).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
        /// Relative norm error injected into the norm-conservation property.
        #[arg(long, default_value_t = 0.0)]
        inject_norm_drift: f64,
        /// Also write the matrix to this file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        sequential: bool,
    },
}

const USAGE_ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { scenario, config, seed, out } => run(scenario, config, seed, out),
        Command::Estimates { gas, radius, temp, pressure } => {
            let inputs = EnvironmentInputs { m_gas: gas.molecule_mass(), temperature: temp, pressure, radius };
            if let Err(e) = inputs.validate() {
                eprintln!("{e}");
                return ExitCode::from(USAGE_ERROR);
            }
            print!("{}", inputs.estimate().render());
            ExitCode::SUCCESS
        }
        Command::Verify { seed, only, inject_norm_drift, out, sequential } => {
            if let Some(bad) = only.iter().find(|&&id| check_info(id).is_none()) {
                eprintln!("no check numbered {bad}");
                return ExitCode::from(USAGE_ERROR);
            }
            let exec = if sequential { Execution::Sequential } else { Execution::default() };
            let options = SuiteOptions { seed, exec, norm_drift: inject_norm_drift };
            let report = match run_suite(&options, &only) {
                Ok(r) => r,
                Err(e) => {
                    eprintln!("verify: {e}");
                    return ExitCode::FAILURE;
                }
            };
            print!("{}", report.render_with_timings());
            if let Some(path) = out {
                if let Err(e) = std::fs::write(&path, report.render()) {
                    eprintln!("cannot write {}: {e}", path.display());
                    return ExitCode::FAILURE;
                }
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}

fn run(scenario: Option<Scenario>, config: Option<PathBuf>, seed: Option<u64>, out: PathBuf) -> ExitCode {
    let text = match config.as_ref().map(std::fs::read_to_string).transpose() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read config: {e}");
            return ExitCode::from(USAGE_ERROR);
        }
    };
    let resolved = match resolve(text.as_deref(), scenario, seed) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(USAGE_ERROR);
        }
    };
    let name = resolved.scenario.expect("resolved");
    let dir = out.join(name.name());
    let started = manifest::unix_now();
    let prepared = std::fs::create_dir_all(&dir)
        .and_then(|_| std::fs::write(dir.join("config.toml"), resolved.to_toml()))
        .and_then(|_| std::fs::write(dir.join("plot.gp"), plots::script(name)));
    if let Err(e) = prepared {
        eprintln!("cannot write to {}: {e}", dir.display());
        return ExitCode::FAILURE;
    }
    let outcome = match scenarios::run(&resolved, &dir) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("scenario {name}: {e}");
            return ExitCode::FAILURE;
        }
    };
    print!("{}", outcome.console);
    for v in &outcome.verdicts {
        println!("{} {} {}", v.name, if v.passed { "PASS" } else { "FAIL" }, v.detail);
    }
    let manifest = manifest::RunManifest::new(&resolved, started, &outcome.verdicts);
    if let Err(e) = std::fs::write(dir.join("manifest.toml"), manifest.to_toml()) {
        eprintln!("cannot write manifest: {e}");
        return ExitCode::FAILURE;
    }
    if manifest.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
