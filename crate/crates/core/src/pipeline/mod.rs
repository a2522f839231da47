//! Batch front end: configuration, subcommands and their artifacts.

mod commands;
mod config;

use std::fmt;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};

pub use config::{apply_override, CoverConfig, DegreeSet, GridConfig, Manifold, RunConfig, TargetRef};

use crate::analysis::AnalysisError;
use crate::grid::GridError;
use crate::herglotz::HerglotzError;
use crate::sphere::SphereError;
use crate::torus::TorusError;
use crate::waves::WaveError;

pub const TOOLKIT_NAME: &str = "toolkit";
pub const TOOLKIT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    Lattice,
    Cover,
    Approximate,
    Synthesize,
    ErrorScan,
    Verify,
    Nodal,
}

impl Subcommand {
    pub const ALL: [Subcommand; 7] = [
        Self::Lattice,
        Self::Cover,
        Self::Approximate,
        Self::Synthesize,
        Self::ErrorScan,
        Self::Verify,
        Self::Nodal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Lattice => "lattice",
            Self::Cover => "cover",
            Self::Approximate => "approximate",
            Self::Synthesize => "synthesize",
            Self::ErrorScan => "error-scan",
            Self::Verify => "verify",
            Self::Nodal => "nodal",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }
}

impl fmt::Display for Subcommand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorClass {
    /// Bad configuration or parameters outside an operation's domain.
    Validation,
    /// A well-posed computation that did not reach its goal.
    Numerical,
    /// Reading or writing files.
    Io,
}

impl ErrorClass {
    pub fn exit_code(self) -> i32 {
        match self {
            Self::Validation => 2,
            Self::Numerical => 3,
            Self::Io => 1,
        }
    }
}

/// Machine-readable failure of a run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PipelineError {
    pub class: ErrorClass,
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

impl PipelineError {
    pub fn new(class: ErrorClass, kind: &str, message: impl Into<String>) -> Self {
        Self {
            class,
            kind: kind.to_string(),
            message: message.into(),
            details: None,
        }
    }

    pub fn config(message: impl Into<String>) -> Self {
        Self::new(ErrorClass::Validation, "config", message)
    }

    pub fn numerical(kind: &str, message: impl Into<String>) -> Self {
        Self::new(ErrorClass::Numerical, kind, message)
    }

    pub fn with_details(mut self, details: Value) -> Self {
        self.details = Some(details);
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.class.exit_code()
    }

    /// `{"error": {...}, "exit_code": c}`.
    pub fn to_json(&self) -> Value {
        json!({ "error": self, "exit_code": self.exit_code() })
    }
}

impl fmt::Display for PipelineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl std::error::Error for PipelineError {}

impl From<std::io::Error> for PipelineError {
    fn from(e: std::io::Error) -> Self {
        Self::new(ErrorClass::Io, "io", e.to_string())
    }
}

impl From<WaveError> for PipelineError {
    fn from(e: WaveError) -> Self {
        let class = match e {
            WaveError::QuadratureInsufficient { .. } | WaveError::IllConditionedRadialFit { .. } => {
                ErrorClass::Numerical
            }
            _ => ErrorClass::Validation,
        };
        Self::new(class, "wave", e.to_string())
    }
}

impl From<GridError> for PipelineError {
    fn from(e: GridError) -> Self {
        Self::new(ErrorClass::Validation, "grid", e.to_string())
    }
}

impl From<HerglotzError> for PipelineError {
    fn from(e: HerglotzError) -> Self {
        match e {
            HerglotzError::Wave(w) => w.into(),
            HerglotzError::TailUnreachable { .. } => Self::numerical("herglotz", e.to_string()),
            _ => Self::new(ErrorClass::Validation, "herglotz", e.to_string()),
        }
    }
}

impl From<SphereError> for PipelineError {
    fn from(e: SphereError) -> Self {
        Self::new(ErrorClass::Validation, "sphere", e.to_string())
    }
}

impl From<TorusError> for PipelineError {
    fn from(e: TorusError) -> Self {
        match e {
            TorusError::EmptyCell { ref report } => Self::numerical("empty_cell", e.to_string())
                .with_details(json!({ "degree": report.degree, "empty_cells": report.empty })),
            TorusError::Wave(w) => w.into(),
            _ => Self::new(ErrorClass::Validation, "torus", e.to_string()),
        }
    }
}

impl From<AnalysisError> for PipelineError {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Wave(w) => w.into(),
            AnalysisError::Grid(g) => g.into(),
            _ => Self::new(ErrorClass::Validation, "analysis", e.to_string()),
        }
    }
}

/// Files written by a run and its headline results.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub subcommand: String,
    pub output: PathBuf,
    pub files: Vec<String>,
    pub results: Value,
}

/// Output sink that records the files it writes.
pub(crate) struct Artifacts {
    dir: PathBuf,
    files: Vec<String>,
}

impl Artifacts {
    fn new(dir: &Path) -> Result<Self, PipelineError> {
        std::fs::create_dir_all(dir)?;
        Ok(Self {
            dir: dir.to_path_buf(),
            files: Vec::new(),
        })
    }

    pub(crate) fn write(&mut self, name: &str, bytes: &[u8]) -> Result<(), PipelineError> {
        std::fs::write(self.dir.join(name), bytes)?;
        self.files.push(name.to_string());
        Ok(())
    }

    pub(crate) fn json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<(), PipelineError> {
        let mut text = serde_json::to_string_pretty(value).map_err(|e| PipelineError::new(ErrorClass::Io, "json", e.to_string()))?;
        text.push('\n');
        self.write(name, text.as_bytes())
    }
}

/// Runs `sub` with `config`, writing artifacts and `manifest.json` to
/// `out` (or the configured output directory, or `./out`). On failure the
/// manifest and an `error.json` record are still written when possible.
pub fn run(sub: Subcommand, config: &RunConfig, out: Option<&Path>) -> Result<RunSummary, PipelineError> {
    let dir = out
        .map(Path::to_path_buf)
        .or_else(|| config.output.clone())
        .unwrap_or_else(|| PathBuf::from("out"));
    let mut art = Artifacts::new(&dir)?;
    let outcome = commands::dispatch(sub, config, &mut art);
    let status = match &outcome {
        Ok(_) => json!({ "status": "ok", "exit_code": 0 }),
        Err(e) => {
            art.json("error.json", &e.to_json())?;
            json!({ "status": "failed", "exit_code": e.exit_code() })
        }
    };
    let manifest = json!({
        "toolkit": TOOLKIT_NAME,
        "version": TOOLKIT_VERSION,
        "subcommand": sub.name(),
        "config": config,
        "outcome": status,
        "files": art.files,
    });
    art.json("manifest.json", &manifest)?;
    let results = outcome?;
    Ok(RunSummary {
        subcommand: sub.name().to_string(),
        output: dir,
        files: art.files,
        results,
    })
}
