//! Scenario parameter handling: JSON config files merged with command-line
//! flags (flags win), typed accessors with defaults, and strict rejection of
//! keys the scenario does not understand.

use std::collections::{BTreeMap, BTreeSet};

use crate::{CliError, Result};

#[derive(Debug, Clone)]
pub struct Params {
    values: BTreeMap<String, serde_json::Value>,
    used: BTreeSet<String>,
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl Params {
    pub fn new(values: BTreeMap<String, serde_json::Value>) -> Self {
        Self {
            values,
            used: BTreeSet::new(),
        }
    }

    /// Merge in a flag override; flags always win over the config file.
    pub fn set(&mut self, key: &str, value: serde_json::Value) {
        self.values.insert(key.to_string(), value);
    }

    pub fn values(&self) -> &BTreeMap<String, serde_json::Value> {
        &self.values
    }

    fn raw(&mut self, key: &str) -> Option<serde_json::Value> {
        let v = self.values.get(key).cloned();
        if v.is_some() {
            self.used.insert(key.to_string());
        }
        v
    }

    pub fn get_str(&mut self, key: &str, default: &str) -> Result<String> {
        match self.raw(key) {
            None => Ok(default.to_string()),
            Some(serde_json::Value::String(s)) => Ok(s),
            Some(other) => Err(config_err(format!("key '{key}' must be a string, got {other}"))),
        }
    }

    pub fn get_f64(&mut self, key: &str, default: f64) -> Result<f64> {
        match self.raw(key) {
            None => Ok(default),
            Some(serde_json::Value::Number(n)) => n
                .as_f64()
                .ok_or_else(|| config_err(format!("key '{key}' is not a finite number"))),
            Some(other) => Err(config_err(format!("key '{key}' must be a number, got {other}"))),
        }
    }

    pub fn get_u64(&mut self, key: &str, default: u64) -> Result<u64> {
        match self.raw(key) {
            None => Ok(default),
            Some(serde_json::Value::Number(n)) => n
                .as_u64()
                .ok_or_else(|| config_err(format!("key '{key}' must be a nonnegative integer"))),
            Some(other) => Err(config_err(format!("key '{key}' must be an integer, got {other}"))),
        }
    }

    pub fn get_usize(&mut self, key: &str, default: usize) -> Result<usize> {
        Ok(self.get_u64(key, default as u64)? as usize)
    }

    pub fn get_bool(&mut self, key: &str, default: bool) -> Result<bool> {
        match self.raw(key) {
            None => Ok(default),
            Some(serde_json::Value::Bool(b)) => Ok(b),
            Some(other) => Err(config_err(format!("key '{key}' must be a boolean, got {other}"))),
        }
    }

    /// A list of floats, accepted either as a JSON array or as a
    /// comma-separated string (the flag form).
    pub fn get_f64_list(&mut self, key: &str, default: &[f64]) -> Result<Vec<f64>> {
        match self.raw(key) {
            None => Ok(default.to_vec()),
            Some(serde_json::Value::Array(items)) => items
                .iter()
                .map(|v| {
                    v.as_f64()
                        .ok_or_else(|| config_err(format!("key '{key}' must list numbers")))
                })
                .collect(),
            Some(serde_json::Value::String(s)) => s
                .split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<f64>()
                        .map_err(|_| config_err(format!("key '{key}': cannot parse '{tok}'")))
                })
                .collect(),
            Some(other) => Err(config_err(format!("key '{key}' must be a list, got {other}"))),
        }
    }

    /// Seed accessor for stochastic scenarios; absence is a config error.
    pub fn require_seed(&mut self) -> Result<u64> {
        match self.raw("seed") {
            Some(serde_json::Value::Number(n)) => n
                .as_u64()
                .ok_or_else(|| config_err("seed must be a nonnegative integer")),
            Some(other) => Err(config_err(format!("seed must be an integer, got {other}"))),
            None => Err(config_err(
                "this scenario is stochastic: a seed is mandatory (--seed or config key 'seed')",
            )),
        }
    }

    /// Reject keys no accessor ever asked for.
    pub fn finish(&self) -> Result<()> {
        let unknown: Vec<&String> = self
            .values
            .keys()
            .filter(|k| !self.used.contains(*k) && *k != "seed")
            .collect();
        if unknown.is_empty() {
            Ok(())
        } else {
            let list: Vec<String> = unknown.iter().map(|k| (*k).clone()).collect();
            Err(config_err(format!("unknown config keys: {}", list.join(", "))))
        }
    }
}

/// Load a JSON config file into a parameter table.
pub fn load_config_file(path: &std::path::Path) -> Result<BTreeMap<String, serde_json::Value>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| config_err(format!("cannot read config {}: {e}", path.display())))?;
    let doc: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| config_err(format!("invalid JSON in {}: {e}", path.display())))?;
    match doc {
        serde_json::Value::Object(map) => Ok(map.into_iter().collect()),
        _ => Err(config_err("config file must hold a JSON object")),
    }
}
