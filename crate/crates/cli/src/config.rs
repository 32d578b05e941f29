//! Scenario configuration: a TOML file with top-level `scenario`/`seed` keys and one
//! table per concern. Missing keys take scenario-specific defaults; unknown keys are
//! rejected.

use clap::ValueEnum;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Scenario {
    InterferenceBounce,
    SingleCollision,
    ZStatistics,
    GrwVsBath,
    ComAmplification,
    ClassicalTrajectory,
    Estimates,
    VerifyAll,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::InterferenceBounce => "interference-bounce",
            Scenario::SingleCollision => "single-collision",
            Scenario::ZStatistics => "z-statistics",
            Scenario::GrwVsBath => "grw-vs-bath",
            Scenario::ComAmplification => "com-amplification",
            Scenario::ClassicalTrajectory => "classical-trajectory",
            Scenario::Estimates => "estimates",
            Scenario::VerifyAll => "verify-all",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct GridConfig {
    pub half_width: f64,
    pub points: usize,
    pub dt: f64,
    pub duration: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig { half_width: 40.0, points: 1024, dt: 2e-4, duration: 5.0 }
    }
}

/// Initial two-packet state `∓mu` moving towards each other, and the tracked trajectory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StateConfig {
    pub mu: f64,
    pub sigma: f64,
    pub velocity: f64,
    pub x_start: f64,
}

impl Default for StateConfig {
    fn default() -> Self {
        StateConfig { mu: 5.0, sigma: 1.0, velocity: 2.0, x_start: -5.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BathConfig {
    pub enabled: bool,
    pub sigma: f64,
    pub rate: f64,
    /// Bath coordinate grid for the single-collision joint field.
    pub y_half_width: f64,
    pub y_points: usize,
    pub y_start: f64,
    pub t_i: f64,
    pub t_f: f64,
}

impl Default for BathConfig {
    fn default() -> Self {
        BathConfig {
            enabled: false,
            sigma: 2.0,
            rate: 5.0,
            y_half_width: 20.0,
            y_points: 512,
            y_start: -0.4,
            t_i: 0.0,
            t_f: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StatisticsConfig {
    pub samples: usize,
    /// 95 or 99.
    pub confidence: u8,
}

impl Default for StatisticsConfig {
    fn default() -> Self {
        StatisticsConfig { samples: 10_000, confidence: 99 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AmplificationConfig {
    pub sizes: Vec<usize>,
    pub lambda: f64,
    pub duration: f64,
    pub runs: usize,
    /// `uniform-target` or `independent-streams`.
    pub model: String,
}

impl Default for AmplificationConfig {
    fn default() -> Self {
        AmplificationConfig { sizes: vec![1, 2, 4, 8], lambda: 1.0, duration: 10.0, runs: 400, model: "uniform-target".into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ClassicalConfig {
    pub lambda: f64,
    pub mass: f64,
    /// `free`, `linear` or `harmonic`; `strength` is the slope or spring constant.
    pub potential: String,
    pub strength: f64,
    pub x0: f64,
    pub v0: f64,
    pub duration: f64,
    pub dt: f64,
    pub fluctuations: bool,
    /// Paths for the fluctuation magnitudes at sphere parameters.
    pub paths: usize,
}

impl Default for ClassicalConfig {
    fn default() -> Self {
        ClassicalConfig {
            lambda: 1.0,
            mass: 1.0,
            potential: "harmonic".into(),
            strength: 1.0,
            x0: 1.0,
            v0: 0.0,
            duration: 2.0 * std::f64::consts::PI,
            dt: 2.0 * std::f64::consts::PI / 1000.0,
            fluctuations: false,
            paths: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct EnvironmentConfig {
    pub m_gas: f64,
    pub temperature: f64,
    pub pressure: f64,
    pub radius: f64,
}

impl Default for EnvironmentConfig {
    fn default() -> Self {
        let a = pilotwave::bath::EnvironmentInputs::atmosphere();
        EnvironmentConfig { m_gas: a.m_gas, temperature: a.temperature, pressure: a.pressure, radius: a.radius }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifyConfig {
    /// Check numbers to run; empty runs all of them.
    pub only: Vec<u8>,
    pub inject_norm_drift: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { only: Vec::new(), inject_norm_drift: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScenarioConfig {
    pub scenario: Option<Scenario>,
    pub seed: u64,
    pub parallel: bool,
    pub grid: GridConfig,
    pub state: StateConfig,
    pub bath: BathConfig,
    pub statistics: StatisticsConfig,
    pub amplification: AmplificationConfig,
    pub classical: ClassicalConfig,
    pub environment: EnvironmentConfig,
    pub verify: VerifyConfig,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            scenario: None,
            seed: 1,
            parallel: true,
            grid: GridConfig::default(),
            state: StateConfig::default(),
            bath: BathConfig::default(),
            statistics: StatisticsConfig::default(),
            amplification: AmplificationConfig::default(),
            classical: ClassicalConfig::default(),
            environment: EnvironmentConfig::default(),
            verify: VerifyConfig::default(),
        }
    }
}

impl ScenarioConfig {
    /// Defaults tuned for `scenario`.
    pub fn defaults_for(scenario: Scenario) -> Self {
        let mut c = ScenarioConfig { scenario: Some(scenario), ..Default::default() };
        match scenario {
            Scenario::SingleCollision => {
                c.grid = GridConfig { half_width: 8.0, points: 512, dt: 1e-3, duration: 1.0 };
                c.state = StateConfig { mu: 2.0, sigma: 0.8, velocity: 0.5, x_start: 1.7 };
                c.bath.sigma = 1.0;
            }
            Scenario::ZStatistics => {
                c.grid = GridConfig { half_width: 20.0, points: 1024, dt: 1e-3, duration: 0.0 };
                c.state = StateConfig { mu: 3.0, sigma: 1.0, velocity: 0.5, x_start: 0.0 };
                c.bath.sigma = 1.0;
            }
            Scenario::GrwVsBath => {
                c.grid = GridConfig { half_width: 16.0, points: 256, dt: 5e-4, duration: 2.5 };
                c.state = StateConfig { mu: 3.0, sigma: 1.0, velocity: 1.0, x_start: 0.0 };
                c.bath = BathConfig { enabled: true, sigma: 1.0, rate: 2.0, ..BathConfig::default() };
                c.statistics = StatisticsConfig { samples: 1000, confidence: 95 };
            }
            _ => {}
        }
        c
    }
}

#[derive(Debug)]
pub enum ConfigError {
    Parse(String),
    Invalid(String),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Parse(m) => write!(f, "config parse error: {m}"),
            ConfigError::Invalid(m) => write!(f, "invalid config: {m}"),
        }
    }
}

fn merge(base: &mut toml::Table, over: toml::Table) {
    for (k, v) in over {
        match (base.get_mut(&k), v) {
            (Some(toml::Value::Table(b)), toml::Value::Table(o)) => merge(b, o),
            (_, v) => {
                base.insert(k, v);
            }
        }
    }
}

/// Parses `text` and overlays it on the defaults of the chosen scenario. The scenario
/// given on the command line wins over the one in the file; `seed` likewise.
pub fn resolve(text: Option<&str>, scenario: Option<Scenario>, seed: Option<u64>) -> Result<ScenarioConfig, ConfigError> {
    let (file, table) = match text {
        Some(t) => {
            let parsed: ScenarioConfig = toml::from_str(t).map_err(|e| ConfigError::Parse(e.to_string()))?;
            let table: toml::Table = toml::from_str(t).map_err(|e| ConfigError::Parse(e.to_string()))?;
            (Some(parsed), table)
        }
        None => (None, toml::Table::new()),
    };
    let scenario = scenario
        .or_else(|| file.as_ref().and_then(|f| f.scenario))
        .ok_or_else(|| ConfigError::Invalid("no scenario given (use --scenario or the `scenario` key)".into()))?;
    let mut base = toml::Table::try_from(ScenarioConfig::defaults_for(scenario)).map_err(|e| ConfigError::Invalid(e.to_string()))?;
    merge(&mut base, table);
    let mut config: ScenarioConfig = base.try_into().map_err(|e: toml::de::Error| ConfigError::Parse(e.to_string()))?;
    config.scenario = Some(scenario);
    if let Some(s) = seed {
        config.seed = s;
    }
    config.validate()?;
    Ok(config)
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |m: String| Err(ConfigError::Invalid(m));
        let g = &self.grid;
        if !(g.half_width > 0.0 && g.dt > 0.0 && g.duration >= 0.0) || g.points < 16 {
            return bad(format!("[grid] needs half_width > 0, dt > 0, duration ≥ 0 and points ≥ 16 (got {g:?})"));
        }
        if ![95, 99].contains(&self.statistics.confidence) {
            return bad(format!("[statistics] confidence must be 95 or 99 (got {})", self.statistics.confidence));
        }
        if !["uniform-target", "independent-streams"].contains(&self.amplification.model.as_str()) {
            return bad(format!("[amplification] unknown model `{}`", self.amplification.model));
        }
        if !["free", "linear", "harmonic"].contains(&self.classical.potential.as_str()) {
            return bad(format!("[classical] unknown potential `{}`", self.classical.potential));
        }
        Ok(())
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }
}
