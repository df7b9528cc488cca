//! Scenario runner behind the `nmlab` binary.
//!
//! A run takes a scenario name, a flat JSON object of parameters and an
//! output directory. It writes one or more CSV files plus
//! `<scenario>_manifest.json` listing the parameters, crate version, SHA-256
//! of every CSV and a scenario summary. CSV content depends only on the
//! parameters.

pub mod io;
mod params;
mod scenarios;

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Map, Value};

pub use params::Violation;
use scenarios::Plan;

/// Process exit codes.
pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const CONFIG: i32 = 2;
    pub const IO: i32 = 3;
    pub const SINGULAR: i32 = 4;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    Fig5,
    Fig6,
    Classify,
    Synth,
}

impl Scenario {
    pub const ALL: [Scenario; 8] = [
        Scenario::Fig1,
        Scenario::Fig2,
        Scenario::Fig3,
        Scenario::Fig4,
        Scenario::Fig5,
        Scenario::Fig6,
        Scenario::Classify,
        Scenario::Synth,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Fig1 => "fig1",
            Scenario::Fig2 => "fig2",
            Scenario::Fig3 => "fig3",
            Scenario::Fig4 => "fig4",
            Scenario::Fig5 => "fig5",
            Scenario::Fig6 => "fig6",
            Scenario::Classify => "classify",
            Scenario::Synth => "synth",
        }
    }
}

impl std::str::FromStr for Scenario {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| format!("unknown scenario {s:?}"))
    }
}

impl std::fmt::Display for Scenario {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub parameters: Map<String, Value>,
    pub output_path: PathBuf,
    /// Directory that relative input paths are resolved against.
    pub base_dir: PathBuf,
    /// Adds the wall-clock time to the manifest.
    pub timestamp: bool,
}

impl RunConfig {
    pub fn new(
        scenario: Scenario,
        parameters: Map<String, Value>,
        output_path: impl Into<PathBuf>,
    ) -> Self {
        Self {
            scenario,
            parameters,
            output_path: output_path.into(),
            base_dir: PathBuf::from("."),
            timestamp: false,
        }
    }

    /// Loads the parameter object from a JSON file; relative paths inside it
    /// resolve against the file's directory.
    pub fn from_file(
        scenario: Scenario,
        config: &Path,
        output_path: impl Into<PathBuf>,
    ) -> Result<Self, RunError> {
        let text = fs::read_to_string(config)
            .map_err(|e| RunError::Io(format!("{}: {e}", config.display())))?;
        let value: Value = serde_json::from_str(&text).map_err(|e| {
            RunError::Config(vec![Violation::new("config", format!("invalid JSON: {e}"))])
        })?;
        let Value::Object(parameters) = value else {
            return Err(RunError::Config(vec![Violation::new(
                "config",
                "must be a JSON object",
            )]));
        };
        let mut cfg = Self::new(scenario, parameters, output_path);
        cfg.base_dir = config.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(cfg)
    }

    pub(crate) fn resolve(&self, path: &str) -> PathBuf {
        let p = Path::new(path);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RunError {
    Config(Vec<Violation>),
    Io(String),
    Singular(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Config(_) => exit::CONFIG,
            RunError::Io(_) => exit::IO,
            RunError::Singular(_) => exit::SINGULAR,
        }
    }

    /// Machine-readable description for stderr.
    pub fn to_json(&self) -> Value {
        match self {
            RunError::Config(v) => json!({ "error": "config", "violations": v }),
            RunError::Io(m) => json!({ "error": "io", "message": m }),
            RunError::Singular(m) => json!({ "error": "singular", "message": m }),
        }
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

impl std::error::Error for RunError {}

fn io_error(path: &Path, e: std::io::Error) -> RunError {
    RunError::Io(format!("{}: {e}", path.display()))
}

/// One CSV file produced by a run.
#[derive(Debug, Clone, Serialize)]
pub struct OutputFile {
    pub file: String,
    pub rows: usize,
    pub sha256: String,
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub outputs: Vec<OutputFile>,
    pub manifest: PathBuf,
    pub summary: Value,
}

/// Constraint violations of `config`; empty iff [`run`] would not fail with
/// a config error.
pub fn validate(config: &RunConfig) -> Vec<Violation> {
    match Plan::build(config) {
        Err(RunError::Config(v)) => v,
        _ => Vec::new(),
    }
}

pub fn run(config: &RunConfig) -> Result<RunReport, RunError> {
    let plan = Plan::build(config)?;
    let result = plan.execute()?;

    let dir = &config.output_path;
    fs::create_dir_all(dir).map_err(|e| io_error(dir, e))?;
    let mut outputs = Vec::with_capacity(result.tables.len());
    for (name, table) in &result.tables {
        let bytes = table.to_bytes().map_err(|e| RunError::Io(e.to_string()))?;
        let path = dir.join(name);
        fs::write(&path, &bytes).map_err(|e| io_error(&path, e))?;
        outputs.push(OutputFile {
            file: name.clone(),
            rows: table.len(),
            sha256: io::sha256_hex(&bytes),
        });
    }

    let mut manifest = json!({
        "scenario": config.scenario,
        "version": env!("CARGO_PKG_VERSION"),
        "parameters": config.parameters,
        "outputs": outputs,
        "summary": result.summary,
    });
    if config.timestamp {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        manifest["generated_at_unix"] = json!(secs);
    }
    let path = dir.join(format!("{}_manifest.json", config.scenario));
    let mut text =
        serde_json::to_string_pretty(&manifest).map_err(|e| RunError::Io(e.to_string()))?;
    text.push('\n');
    fs::write(&path, text).map_err(|e| io_error(&path, e))?;

    Ok(RunReport {
        outputs,
        manifest: path,
        summary: result.summary,
    })
}
