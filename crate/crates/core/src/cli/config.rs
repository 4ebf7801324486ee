use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use super::keys::{keys_for, lookup};
use crate::error::{Error, Result};

/// Resolved `key -> value` strings for one subcommand: defaults, then file, then flags.
#[derive(Debug, Clone, Default)]
pub struct Config {
    command: &'static str,
    values: BTreeMap<&'static str, String>,
}

/// Parse `key = value` lines; `#` starts a comment.
pub fn parse_file(text: &str) -> Result<Vec<(&'static str, String)>> {
    let mut out = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(Error::Config(format!("line {}: expected key = value, got {raw:?}", no + 1)));
        };
        let (k, v) = (k.trim(), v.trim());
        let Some(key) = lookup(k) else {
            return Err(Error::Config(format!("line {}: unknown key {k:?}", no + 1)));
        };
        out.push((key.name, v.to_string()));
    }
    Ok(out)
}

impl Config {
    pub fn new(command: &'static str) -> Self {
        let mut values = BTreeMap::new();
        for name in keys_for(command) {
            if let Some(d) = lookup(name).and_then(|k| k.default) {
                values.insert(name, d.to_string());
            }
        }
        Self { command, values }
    }

    /// Overlay pairs; keys not read by this subcommand are ignored.
    pub fn overlay(&mut self, pairs: impl IntoIterator<Item = (&'static str, String)>) {
        let used = keys_for(self.command);
        for (k, v) in pairs {
            if used.contains(&k) {
                self.values.insert(k, v);
            }
        }
    }

    pub fn load_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path)?;
        self.overlay(parse_file(&text)?);
        Ok(())
    }

    pub fn raw(&self, key: &'static str) -> Result<&str> {
        self.values
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Error::field(key, "missing; pass --".to_string() + key + " or set it in the config file"))
    }

    pub fn get<T: FromStr>(&self, key: &'static str) -> Result<T>
    where
        T::Err: std::fmt::Display,
    {
        let raw = self.raw(key)?;
        raw.parse().map_err(|e| Error::field(key, format!("cannot parse {raw:?}: {e}")))
    }

    pub fn flag(&self, key: &'static str) -> Result<bool> {
        match self.raw(key)? {
            "true" | "1" | "yes" => Ok(true),
            "false" | "0" | "no" => Ok(false),
            other => Err(Error::field(key, format!("expected true or false, got {other:?}"))),
        }
    }

    /// `None` when the value is `auto`.
    pub fn get_auto(&self, key: &'static str) -> Result<Option<f64>> {
        match self.raw(key)? {
            "auto" => Ok(None),
            _ => self.get(key).map(Some),
        }
    }
}
