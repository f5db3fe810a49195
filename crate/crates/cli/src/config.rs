//! Run configuration read from TOML.

use std::fmt;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::ValueEnum;
use ecopol_core::economy::{BenchmarkEconomy, CanonicalEconomy};
use ecopol_core::policy::{builtin, ScenarioSpec};
use ecopol_core::report::Precision;
use serde::Deserialize;

/// Anything the user must fix in their inputs. Maps to exit code 2.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

pub fn config_error(msg: impl Into<String>) -> anyhow::Error {
    ConfigError(msg.into()).into()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    /// Rounded tables in the published layouts.
    #[default]
    PaperTable,
    /// Comma-separated records at full precision.
    Delimited,
    /// JSON lines at full precision.
    #[serde(alias = "structured-records")]
    #[value(alias = "structured-records")]
    Structured,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PrecisionConfig {
    pub percent: usize,
    pub money: usize,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        let p = Precision::default();
        PrecisionConfig { percent: p.percent, money: p.money }
    }
}

impl From<PrecisionConfig> for Precision {
    fn from(p: PrecisionConfig) -> Self {
        Precision { percent: p.percent, money: p.money }
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Benchmark TOML; the bundled 2019 benchmark when absent. Relative
    /// paths resolve against the config file's directory.
    pub benchmark: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub precision: PrecisionConfig,
    /// Built-in case names (`1.0`, `case-1.0`) or table names (`table-2`).
    #[serde(default)]
    pub scenarios: Vec<String>,
    /// Inline scenario definitions, run after the named ones.
    #[serde(default, rename = "scenario")]
    pub inline: Vec<ScenarioSpec>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| config_error(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg: RunConfig = toml::from_str(&text)
            .map_err(|e| config_error(format!("{}: {e}", path.display())))?;
        let dir = path.parent().unwrap_or(Path::new("."));
        for p in [&mut cfg.benchmark, &mut cfg.out].into_iter().flatten() {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        }
        Ok(cfg)
    }

    pub fn economy(&self) -> Result<CanonicalEconomy> {
        load_economy(self.benchmark.as_deref())
    }

    /// Named entries followed by inline scenarios; empty lists are an error.
    pub fn entries(&self) -> Result<Vec<Entry>> {
        let mut out = Vec::new();
        for name in &self.scenarios {
            out.push(Entry::parse(name)?);
        }
        out.extend(self.inline.iter().cloned().map(Entry::Case));
        if out.is_empty() {
            return Err(config_error("no scenarios configured"));
        }
        Ok(out)
    }
}

pub fn load_economy(path: Option<&Path>) -> Result<CanonicalEconomy> {
    let b = match path {
        Some(p) => BenchmarkEconomy::from_path(p).map_err(|e| config_error(e.to_string()))?,
        None => BenchmarkEconomy::table1(),
    };
    b.canonicalize().context("benchmark")
}

/// One unit of requested work.
#[derive(Debug, Clone, PartialEq)]
pub enum Entry {
    /// Every case of a published table, in its layout.
    Table(String),
    Case(ScenarioSpec),
}

impl Entry {
    pub fn parse(name: &str) -> Result<Entry> {
        if name.starts_with("table-") {
            if !ecopol_core::report::TABLE_LAYOUTS.contains(&name) {
                return Err(config_error(format!("unknown table `{name}`")));
            }
            return Ok(Entry::Table(name.to_string()));
        }
        builtin(name)
            .map(Entry::Case)
            .map_err(|_| config_error(format!("unknown scenario `{name}`")))
    }
}
