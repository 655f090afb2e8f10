use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::{json, Value};
use tempfile::NamedTempFile;

use crate::config::{Loaded, Scenario};
use crate::svg;

/// Bumped whenever the report layout changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("thresholds failed: {0}")]
    ThresholdFailed(String),
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::ThresholdFailed(_) => 1,
            CliError::ConfigInvalid(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

/// Errors from the simulator: I/O stays I/O, everything else means the
/// configuration describes a run that cannot be carried out.
impl From<ionparity::Error> for CliError {
    fn from(e: ionparity::Error) -> Self {
        match e {
            ionparity::Error::Io(io) => CliError::Io(io),
            other => CliError::ConfigInvalid(other.to_string()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Threshold {
    pub name: String,
    /// `min`, `max` or `abs-diff`.
    pub kind: &'static str,
    pub limit: f64,
    pub observed: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<f64>,
    pub passed: bool,
}

impl Threshold {
    pub fn min(name: &str, limit: f64, observed: f64) -> Self {
        Threshold { name: name.into(), kind: "min", limit, observed, target: None, passed: observed >= limit }
    }

    pub fn max(name: &str, limit: f64, observed: f64) -> Self {
        Threshold { name: name.into(), kind: "max", limit, observed, target: None, passed: observed <= limit }
    }

    /// `|observed − target| ≤ tolerance`.
    pub fn near(name: &str, target: f64, tolerance: f64, observed: f64) -> Self {
        Threshold {
            name: name.into(),
            kind: "abs-diff",
            limit: tolerance,
            observed,
            target: Some(target),
            passed: (observed - target).abs() <= tolerance,
        }
    }
}

/// A labelled time series for CSV and SVG output.
pub struct Series {
    pub title: String,
    pub csv: String,
    pub x_label: String,
    pub x: Vec<f64>,
    pub curves: Vec<(String, Vec<f64>)>,
}

pub struct Outcome {
    pub parameters: Value,
    pub results: Value,
    pub thresholds: Vec<Threshold>,
    pub series: Option<Series>,
}

/// The report body. Everything except `metadata` depends only on the inputs.
pub fn report_json(scenario: Scenario, loaded: &Loaded, outcome: &Outcome) -> Value {
    let passed = outcome.thresholds.iter().all(|t| t.passed);
    json!({
        "schema_version": SCHEMA_VERSION,
        "scenario": scenario.name(),
        "seed": loaded.seed,
        "space": { "cutoffs": loaded.cutoffs(scenario) },
        "parameters": outcome.parameters,
        "results": outcome.results,
        "thresholds": outcome.thresholds,
        "passed": passed,
        "metadata": {
            "generator": concat!("ionparity ", env!("CARGO_PKG_VERSION")),
            "unix_time": SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0),
        },
    })
}

/// Writes `<name>.json` and, when present, `<name>.csv` and `<name>.svg`.
/// Returns the report path.
pub fn write_outputs(
    scenario: Scenario,
    loaded: &Loaded,
    outcome: &Outcome,
    dir: &Path,
    emit_plots: bool,
) -> Result<PathBuf, CliError> {
    std::fs::create_dir_all(dir)?;
    let name = loaded.output_name(scenario);
    if name.is_empty() || name.contains(['/', '\\']) {
        return Err(CliError::ConfigInvalid(format!("output name {name:?} must be a plain file name")));
    }
    let report = report_json(scenario, loaded, outcome);
    let mut text = serde_json::to_string_pretty(&report).expect("report is valid JSON");
    text.push('\n');
    let json_path = dir.join(format!("{name}.json"));
    write_atomic(&json_path, text.as_bytes())?;
    if let Some(series) = &outcome.series {
        if loaded.config.run.csv.unwrap_or(true) {
            write_atomic(&dir.join(format!("{name}.csv")), series.csv.as_bytes())?;
        }
        if emit_plots {
            let plot = svg::line_plot(&series.title, &series.x_label, &series.x, &series.curves);
            write_atomic(&dir.join(format!("{name}.svg")), plot.as_bytes())?;
        }
    }
    Ok(json_path)
}

/// Temp file in the target directory, then rename over the destination.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_kinds() {
        assert!(Threshold::min("a", 0.9, 0.95).passed);
        assert!(!Threshold::min("a", 0.9, 0.85).passed);
        assert!(Threshold::max("b", 1e-3, 1e-4).passed);
        assert!(Threshold::near("c", 1.0, 1e-6, 1.0 + 5e-7).passed);
        assert!(!Threshold::near("c", 1.0, 1e-6, 1.0 + 5e-6).passed);
        assert!(!Threshold::min("nan", 0.0, f64::NAN).passed);
    }

    #[test]
    fn atomic_write_replaces() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("r.json");
        write_atomic(&p, b"one").unwrap();
        write_atomic(&p, b"two").unwrap();
        assert_eq!(std::fs::read_to_string(&p).unwrap(), "two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
