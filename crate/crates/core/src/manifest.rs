//! Run manifests: a flat snapshot of the solver configuration plus the suite
//! selection and seed, written beside every persistent output. Re-running a
//! manifest reproduces all non-timing outputs exactly.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solver::SolverConfig;

/// Snapshot of one command invocation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool_version: String,
    /// Unix seconds at creation; informational only, excluded from
    /// reproducibility comparisons.
    pub timestamp_unix: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Subcommand-specific selection (methods, dims, sentence counts, ...).
    pub suite: serde_json::Value,
    /// Flat key=value snapshot of the solver configuration.
    pub config: BTreeMap<String, String>,
}

impl RunManifest {
    pub fn new(seed: Option<u64>, suite: serde_json::Value, config: &SolverConfig) -> Self {
        Self {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp_unix: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            seed,
            suite,
            config: config_to_map(config),
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    pub fn solver_config(&self) -> Result<SolverConfig> {
        config_from_map(&self.config)
    }
}

/// Flatten a configuration into the key=value vocabulary shared by config
/// files, manifests and CLI overrides.
pub fn config_to_map(c: &SolverConfig) -> BTreeMap<String, String> {
    let mut m = BTreeMap::new();
    m.insert("method".into(), c.method.to_string());
    m.insert("delta".into(), c.ls.delta.to_string());
    m.insert("sigma".into(), c.ls.sigma.to_string());
    m.insert("epsilon".into(), c.epsilon.to_string());
    m.insert("max_iter".into(), c.max_iter.to_string());
    m.insert("nu".into(), c.nu.to_string());
    m.insert("tau".into(), c.hybrid.tau.to_string());
    m.insert("u".into(), c.hybrid.u.to_string());
    m.insert("t".into(), c.hybrid.t.to_string());
    m.insert("ls_max_evals".into(), c.ls.max_evals.to_string());
    m.insert("ls_alpha_max".into(), c.ls.alpha_max.to_string());
    m
}

/// Rebuild a configuration from a flat map, starting from defaults.
pub fn config_from_map(m: &BTreeMap<String, String>) -> Result<SolverConfig> {
    let mut c = SolverConfig::default();
    apply_overrides(&mut c, m)?;
    Ok(c)
}

/// Apply key=value overrides onto an existing configuration.
pub fn apply_overrides(c: &mut SolverConfig, m: &BTreeMap<String, String>) -> Result<()> {
    fn num(k: &str, v: &str) -> Result<f64> {
        v.parse()
            .map_err(|_| Error::InvalidConfig(format!("bad value for {k}: `{v}`")))
    }
    for (k, v) in m {
        match k.as_str() {
            "method" => c.method = v.parse()?,
            "delta" => c.ls.delta = num(k, v)?,
            "sigma" => c.ls.sigma = num(k, v)?,
            "epsilon" => c.epsilon = num(k, v)?,
            "max_iter" => {
                c.max_iter = v
                    .parse()
                    .map_err(|_| Error::InvalidConfig(format!("bad value for max_iter: `{v}`")))?
            }
            "nu" => c.nu = num(k, v)?,
            "tau" => c.hybrid.tau = num(k, v)?,
            "u" => c.hybrid.u = num(k, v)?,
            "t" => c.hybrid.t = num(k, v)?,
            "ls_max_evals" => {
                c.ls.max_evals = v.parse().map_err(|_| {
                    Error::InvalidConfig(format!("bad value for ls_max_evals: `{v}`"))
                })?
            }
            "ls_alpha_max" => c.ls.alpha_max = num(k, v)?,
            other => {
                return Err(Error::InvalidConfig(format!("unknown config key `{other}`")));
            }
        }
    }
    c.validate()
}

/// Parse a flat `key = value` config file (# starts a comment).
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>> {
    let mut m = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            Error::InvalidConfig(format!("line {}: expected key=value", lineno + 1))
        })?;
        m.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(m)
}
