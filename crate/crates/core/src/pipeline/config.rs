//! Feature configuration files.
//!
//! ```yaml
//! components:
//!   - mfcc:
//!       n_mfcc: 20
//!   - f0_contour
//!   - jitters
//! statistics: [mean, std]
//! sample_rate: 16000
//! n_jobs: 4
//! ```
//!
//! Components are plain names or single-key maps of name to parameter
//! overrides. An empty or absent `statistics` list emits every time-series
//! component as a raw series instead of statistic columns.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use serde_yaml::Value;

use super::components::{lookup, ParamKind};
use crate::error::{Error, Result};
use crate::stats::Statistic;

/// The configuration shipped with the crate.
pub const DEFAULT_CONFIG: &str = include_str!("default_config.yaml");

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentSpec {
    pub name: String,
    /// Validated overrides; integer parameters are stored exactly.
    pub params: BTreeMap<String, f64>,
}

impl ComponentSpec {
    pub fn new(name: impl Into<String>) -> Self {
        ComponentSpec {
            name: name.into(),
            params: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn param(&self, key: &str, default: f64) -> f64 {
        self.params.get(key).copied().unwrap_or(default)
    }

    pub fn count(&self, key: &str, default: usize) -> usize {
        self.params.get(key).map_or(default, |&v| v as usize)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureConfig {
    pub components: Vec<ComponentSpec>,
    pub statistics: Vec<Statistic>,
    pub sample_rate: Option<u32>,
    pub n_jobs: Option<usize>,
}

impl FeatureConfig {
    /// Checks names and parameters against the component registry.
    pub fn new(components: Vec<ComponentSpec>, statistics: Vec<Statistic>) -> Result<Self> {
        let config = FeatureConfig {
            components,
            statistics,
            sample_rate: None,
            n_jobs: None,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn default_config() -> Self {
        parse_config_str(DEFAULT_CONFIG).expect("shipped config is valid")
    }

    /// True when time-series components are emitted raw.
    pub fn passthrough(&self) -> bool {
        self.statistics.is_empty()
    }

    fn validate(&self) -> Result<()> {
        if self.components.is_empty() {
            return Err(Error::InvalidParameter("config lists no components".into()));
        }
        for spec in &self.components {
            let info = lookup(&spec.name)?;
            for (key, &value) in &spec.params {
                let Some(p) = info.params.iter().find(|p| p.name == key) else {
                    return Err(bad(&spec.name, key, "not a parameter of this component"));
                };
                p.kind.check(value).map_err(|reason| bad(&spec.name, key, &reason))?;
            }
            (info.check)(spec)?;
        }
        Ok(())
    }
}

pub(crate) fn bad(component: &str, parameter: &str, reason: &str) -> Error {
    Error::BadParameter {
        component: component.to_string(),
        parameter: parameter.to_string(),
        reason: reason.to_string(),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    components: Vec<Value>,
    #[serde(default)]
    statistics: Option<Vec<String>>,
    #[serde(default)]
    sample_rate: Option<u32>,
    #[serde(default)]
    n_jobs: Option<usize>,
}

pub fn parse_config(path: impl AsRef<Path>) -> Result<FeatureConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => Error::FileNotFound(path.to_path_buf()),
        _ => Error::Io(e),
    })?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<FeatureConfig> {
    let raw: RawConfig = serde_yaml::from_str(text).map_err(|e| {
        let (line, column) = e.location().map_or((0, 0), |l| (l.line(), l.column()));
        Error::ConfigSyntax {
            line,
            column,
            message: e.to_string(),
        }
    })?;
    let components = raw.components.iter().map(component_entry).collect::<Result<Vec<_>>>()?;
    let statistics = raw
        .statistics
        .unwrap_or_default()
        .iter()
        .map(|s| s.parse())
        .collect::<Result<Vec<Statistic>>>()?;
    if raw.sample_rate == Some(0) {
        return Err(Error::InvalidParameter("sample_rate must be positive".into()));
    }
    if raw.n_jobs == Some(0) {
        return Err(Error::InvalidParameter("n_jobs must be positive".into()));
    }
    let config = FeatureConfig {
        components,
        statistics,
        sample_rate: raw.sample_rate,
        n_jobs: raw.n_jobs,
    };
    config.validate()?;
    Ok(config)
}

fn syntax(message: String) -> Error {
    Error::ConfigSyntax {
        line: 0,
        column: 0,
        message,
    }
}

fn component_entry(v: &Value) -> Result<ComponentSpec> {
    match v {
        Value::String(name) => {
            lookup(name)?;
            Ok(ComponentSpec::new(name.clone()))
        }
        Value::Mapping(m) if m.len() == 1 => {
            let (k, params) = m.iter().next().expect("one entry");
            let name = k.as_str().ok_or_else(|| syntax("component name must be a string".into()))?;
            let info = lookup(name)?;
            let mut spec = ComponentSpec::new(name);
            match params {
                Value::Null => {}
                Value::Mapping(pm) => {
                    for (pk, pv) in pm {
                        let key = pk
                            .as_str()
                            .ok_or_else(|| syntax(format!("parameter names of `{name}` must be strings")))?;
                        let Some(p) = info.params.iter().find(|p| p.name == key) else {
                            return Err(bad(name, key, "not a parameter of this component"));
                        };
                        let value = match p.kind {
                            ParamKind::Count { .. } => pv
                                .as_i64()
                                .map(|i| i as f64)
                                .ok_or_else(|| bad(name, key, "expected an integer"))?,
                            _ => pv.as_f64().ok_or_else(|| bad(name, key, "expected a number"))?,
                        };
                        spec.params.insert(key.to_string(), value);
                    }
                }
                _ => return Err(bad(name, "", "parameters must be a mapping")),
            }
            Ok(spec)
        }
        _ => Err(syntax(
            "each component must be a name or a single-key map of name to parameters".into(),
        )),
    }
}
