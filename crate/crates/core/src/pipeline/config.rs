//! Run configuration: a single JSON document with defaults for every field.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::PipelineError;
use crate::analysis::NodalCheckOptions;
use crate::herglotz::CellAnchor;
use crate::waves::WaveSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Manifold {
    #[default]
    Sphere,
    Torus,
}

/// A wave given inline or as a path to a JSON file (relative paths are
/// resolved against the configuration file).
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum TargetRef {
    Path(PathBuf),
    Inline(WaveSpec),
}

impl<'de> Deserialize<'de> for TargetRef {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::String(p) => Ok(Self::Path(PathBuf::from(p))),
            v => WaveSpec::deserialize(v)
                .map(Self::Inline)
                .map_err(|e| serde::de::Error::custom(format!("target: {e}"))),
        }
    }
}

/// Either an explicit list of degrees or `start..=end` with a stride.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DegreeSet {
    List(Vec<u64>),
    Range { start: u64, end: u64, step: u64 },
}

impl DegreeSet {
    pub fn expand(&self) -> Result<Vec<u64>, PipelineError> {
        match self {
            Self::List(v) => Ok(v.clone()),
            Self::Range { start, end, step } => {
                if *step == 0 {
                    return Err(PipelineError::config("degree range step must be positive"));
                }
                Ok((*start..=*end).step_by(*step as usize).collect())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CoverConfig {
    /// Cell diameter bound of the cap cover of `S^{n-1}`.
    pub eps: f64,
    pub anchor: CellAnchor,
    /// Cell diameter bound of the ball cover in Fourier space.
    pub delta: f64,
    /// Truncation radius in Fourier space.
    pub radius: f64,
    /// Bump profile `[a, b]` of the radial extension.
    pub bump: [f64; 2],
}

impl Default for CoverConfig {
    fn default() -> Self {
        Self {
            eps: 0.3,
            anchor: CellAnchor::Center,
            delta: 0.2,
            radius: 12.0,
            bump: [0.05, 0.95],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    /// Radius of the ball `B` on which errors and nodal sets are measured.
    pub radius: f64,
    pub step: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        Self { radius: 1.0, step: 0.05 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub manifold: Manifold,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<DegreeSet>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<TargetRef>,
    pub cover: CoverConfig,
    pub grid: GridConfig,
    /// Derivative order `r` of the `C^r` error.
    pub order: usize,
    /// Base point of the geodesic chart on the sphere (default `e_{n+1}`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_point: Option<Vec<f64>>,
    /// Accept even `N` on `T^3`.
    pub allow_even: bool,
    /// Override of the lattice enumeration cap.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<u64>,
    /// Seed and count of random test points used by `verify`.
    pub seed: u64,
    pub samples: usize,
    pub nodal: NodalCheckOptions,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            manifold: Manifold::Sphere,
            n: 3,
            degree: None,
            degrees: None,
            target: None,
            cover: CoverConfig::default(),
            grid: GridConfig::default(),
            order: 0,
            base_point: None,
            allow_even: false,
            degree_cap: None,
            seed: 0,
            samples: 1000,
            nodal: NodalCheckOptions::default(),
            output: None,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, PipelineError> {
        Self::from_value(serde_json::from_str(text).map_err(|e| PipelineError::config(e.to_string()))?)
    }

    pub fn from_value(value: Value) -> Result<Self, PipelineError> {
        serde_json::from_value(value).map_err(|e| PipelineError::config(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Reads a configuration file, applies `key.path=value` overrides and
    /// resolves a relative target path against the file's directory.
    pub fn load(path: &Path, overrides: &[String]) -> Result<Self, PipelineError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| PipelineError::config(format!("cannot read {}: {e}", path.display())))?;
        let mut value: Value = serde_json::from_str(&text).map_err(|e| PipelineError::config(e.to_string()))?;
        for o in overrides {
            apply_override(&mut value, o)?;
        }
        let mut config = Self::from_value(value)?;
        if let Some(TargetRef::Path(p)) = &mut config.target {
            if p.is_relative() {
                if let Some(dir) = path.parent() {
                    *p = dir.join(&*p);
                }
            }
        }
        Ok(config)
    }

    /// The target wave, reading it from disk when given by path.
    pub fn target_spec(&self) -> Result<WaveSpec, PipelineError> {
        match &self.target {
            None => Err(PipelineError::config("the configuration has no target")),
            Some(TargetRef::Inline(spec)) => Ok(spec.clone()),
            Some(TargetRef::Path(p)) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| PipelineError::config(format!("cannot read {}: {e}", p.display())))?;
                serde_json::from_str(&text).map_err(|e| PipelineError::config(format!("{}: {e}", p.display())))
            }
        }
    }

    pub fn require_degree(&self) -> Result<u64, PipelineError> {
        self.degree
            .ok_or_else(|| PipelineError::config("the configuration has no degree"))
    }

    pub fn degree_list(&self) -> Result<Vec<u64>, PipelineError> {
        match &self.degrees {
            Some(d) => d.expand(),
            None => Ok(self.degree.into_iter().collect()),
        }
    }
}

/// Sets `key.path` in a JSON document; the value is parsed as JSON when
/// possible and taken as a string otherwise.
pub fn apply_override(doc: &mut Value, assignment: &str) -> Result<(), PipelineError> {
    let (key, raw) = assignment
        .split_once('=')
        .ok_or_else(|| PipelineError::config(format!("override `{assignment}` is not key=value")))?;
    let value = serde_json::from_str(raw).unwrap_or_else(|_| Value::String(raw.to_string()));
    let mut slot = doc;
    for part in key.split('.') {
        if !slot.is_object() {
            *slot = Value::Object(Default::default());
        }
        slot = slot
            .as_object_mut()
            .expect("object")
            .entry(part.to_string())
            .or_insert(Value::Null);
    }
    *slot = value;
    Ok(())
}
