//! Scenario JSON: `{"main": {...}, "eve": {...}, "target_rate": r}` with SNRs in dB.

use std::path::Path;

use ars_secrecy::channel::ArsParams;
use ars_secrecy::db_to_linear;
use ars_secrecy::secrecy::SecrecyScenario;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkConfig {
    pub p: f64,
    #[serde(rename = "K1")]
    pub k1: f64,
    #[serde(rename = "K2")]
    pub k2: f64,
    pub m: f64,
    pub mean_snr_db: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub main: LinkConfig,
    pub eve: LinkConfig,
    pub target_rate: f64,
}

impl LinkConfig {
    fn to_params(self) -> ars_secrecy::Result<ArsParams> {
        ArsParams::new(self.p, self.k1, self.k2, self.m, db_to_linear(self.mean_snr_db))
    }
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("invalid scenario JSON: {e}"))
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Self::from_json(&text)
    }

    pub fn scenario(&self) -> Result<SecrecyScenario, String> {
        let build = || {
            SecrecyScenario::new(self.main.to_params()?, self.eve.to_params()?, self.target_rate)
        };
        build().map_err(|e| format!("invalid scenario: {e}"))
    }

    /// The scenario with the main-link SNR replaced.
    pub fn scenario_at(&self, main_snr_db: f64) -> Result<SecrecyScenario, String> {
        let mut c = *self;
        c.main.mean_snr_db = main_snr_db;
        c.scenario()
    }
}
