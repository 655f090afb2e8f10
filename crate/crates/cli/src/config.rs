use std::path::{Path, PathBuf};

use ionparity::units::Quantity;
use ionparity::Cutoffs;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::report::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scenario {
    ParityIdeal,
    ParityTwoBeam,
    RwaCompare,
    AdiabaticCompare,
    NotGate,
    TimeReversal,
    Design,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::ParityIdeal => "parity-ideal",
            Scenario::ParityTwoBeam => "parity-two-beam",
            Scenario::RwaCompare => "rwa-compare",
            Scenario::AdiabaticCompare => "adiabatic-compare",
            Scenario::NotGate => "not-gate",
            Scenario::TimeReversal => "time-reversal",
            Scenario::Design => "design",
        }
    }

    /// Default vibrational cutoffs.
    pub fn default_cutoffs(self) -> Cutoffs {
        match self {
            Scenario::ParityIdeal => Cutoffs::z(16),
            Scenario::ParityTwoBeam => Cutoffs::z(8),
            Scenario::RwaCompare | Scenario::AdiabaticCompare => Cutoffs::z(10),
            Scenario::NotGate => Cutoffs::z(25),
            Scenario::TimeReversal => Cutoffs::z(30),
            Scenario::Design => Cutoffs::default(),
        }
    }
}

/// A scenario file. `parameters` and `thresholds` are checked against the
/// scenario's own schema; unknown keys are rejected everywhere.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: String,
    #[serde(default)]
    pub parameters: serde_json::Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub space: Option<SpaceConfig>,
    #[serde(default)]
    pub run: RunConfig,
    #[serde(default)]
    pub thresholds: serde_json::Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceConfig {
    pub cutoffs: Cutoffs,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Probe suite JSON, relative to the config file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe_suite: Option<PathBuf>,
    /// Largest Fock number of the standard probe suite.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe_max_n: Option<usize>,
    /// Integration step for time-dependent runs or sampling step.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<Quantity>,
    /// Points in the exported time series.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Write the CSV time series (default true).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<bool>,
    /// Base name of the output files (default: scenario name).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_name: Option<String>,
}

/// Config after loading, with paths resolved and the seed applied.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub config: ScenarioConfig,
    pub base_dir: PathBuf,
    pub seed: u64,
}

impl Loaded {
    pub fn cutoffs(&self, scenario: Scenario) -> Cutoffs {
        self.config.space.as_ref().map_or(scenario.default_cutoffs(), |s| s.cutoffs)
    }

    pub fn parameters<P: DeserializeOwned + Default>(&self) -> Result<P, CliError> {
        section(&self.config.parameters, "parameters")
    }

    pub fn thresholds<P: DeserializeOwned + Default>(&self) -> Result<P, CliError> {
        section(&self.config.thresholds, "thresholds")
    }

    pub fn probe_suite_path(&self) -> Option<PathBuf> {
        self.config.run.probe_suite.as_ref().map(|p| self.base_dir.join(p))
    }

    pub fn output_name(&self, scenario: Scenario) -> String {
        self.config.run.output_name.clone().unwrap_or_else(|| scenario.name().to_string())
    }
}

fn section<P: DeserializeOwned + Default>(value: &serde_json::Value, what: &str) -> Result<P, CliError> {
    if value.is_null() {
        return Ok(P::default());
    }
    serde_json::from_value(value.clone()).map_err(|e| CliError::ConfigInvalid(format!("{what}: {e}")))
}

pub fn load(scenario: Scenario, path: Option<&Path>, seed: Option<u64>) -> Result<Loaded, CliError> {
    let (config, base_dir) = match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::ConfigInvalid(format!("cannot read {}: {e}", p.display())))?;
            let config: ScenarioConfig =
                serde_json::from_str(&text).map_err(|e| CliError::ConfigInvalid(format!("{}: {e}", p.display())))?;
            (config, p.parent().map(Path::to_path_buf).unwrap_or_default())
        }
        None => (
            ScenarioConfig {
                scenario: scenario.name().to_string(),
                parameters: serde_json::Value::Null,
                space: None,
                run: RunConfig::default(),
                thresholds: serde_json::Value::Null,
            },
            PathBuf::new(),
        ),
    };
    if config.scenario != scenario.name() {
        return Err(CliError::ConfigInvalid(format!(
            "config is for scenario {:?}, not {:?}",
            config.scenario,
            scenario.name()
        )));
    }
    let seed = seed.or(config.run.seed).unwrap_or(0);
    Ok(Loaded { config, base_dir, seed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_keys_rejected() {
        let bad = r#"{"scenario": "design", "parameterz": {}}"#;
        assert!(serde_json::from_str::<ScenarioConfig>(bad).is_err());
        let bad_run = r#"{"scenario": "design", "run": {"sed": 1}}"#;
        assert!(serde_json::from_str::<ScenarioConfig>(bad_run).is_err());
        let ok = r#"{"scenario": "design", "space": {"cutoffs": {"z": 4}}, "run": {"seed": 3}}"#;
        let cfg: ScenarioConfig = serde_json::from_str(ok).unwrap();
        assert_eq!(cfg.space.unwrap().cutoffs, Cutoffs::z(4));
    }
}
