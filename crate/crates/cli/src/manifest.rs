//! Run manifest: the resolved config, tool version, seed, wall-clock bounds and verdicts.

use crate::config::ScenarioConfig;
use crate::scenarios::Verdict;
use serde::Serialize;
use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub scenario: String,
    pub seed: u64,
    pub started_unix: f64,
    pub finished_unix: f64,
    pub passed: bool,
    pub verdicts: BTreeMap<String, VerdictEntry>,
    pub config: ScenarioConfig,
}

#[derive(Debug, Serialize)]
pub struct VerdictEntry {
    pub passed: bool,
    pub detail: String,
}

pub fn unix_now() -> f64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0)
}

impl RunManifest {
    pub fn new(config: &ScenarioConfig, started: f64, verdicts: &[Verdict]) -> Self {
        RunManifest {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            scenario: config.scenario.map(|s| s.to_string()).unwrap_or_default(),
            seed: config.seed,
            started_unix: started,
            finished_unix: unix_now(),
            passed: verdicts.iter().all(|v| v.passed),
            verdicts: verdicts
                .iter()
                .map(|v| (v.name.clone(), VerdictEntry { passed: v.passed, detail: v.detail.clone() }))
                .collect(),
            config: config.clone(),
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("manifest serializes")
    }
}
