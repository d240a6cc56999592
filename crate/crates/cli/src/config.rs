//! Settings resolution. Flags and `GLYPHRUN_*` variables are handled by
//! clap; anything still unset is looked up in the TOML config file, first
//! under the command's own table and then at top level.

use std::path::Path;
use std::str::FromStr;

use crate::failure::Failure;

#[derive(Debug, Default)]
pub struct ConfigFile {
    table: toml::Table,
}

impl ConfigFile {
    pub fn load(path: Option<&Path>) -> Result<Self, Failure> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
        let table = text
            .parse::<toml::Table>()
            .map_err(|e| Failure::validation(format!("{}: {e}", path.display())))?;
        Ok(ConfigFile { table })
    }

    fn raw(&self, command: &str, key: &str) -> Option<String> {
        let key = key.replace('-', "_");
        let section = self.table.get(command).and_then(|v| v.as_table());
        let value = section
            .and_then(|t| t.get(&key))
            .or_else(|| self.table.get(&key))?;
        Some(match value {
            toml::Value::String(s) => s.clone(),
            toml::Value::Array(items) => items
                .iter()
                .map(|v| v.as_str().map_or_else(|| v.to_string(), str::to_string))
                .collect::<Vec<_>>()
                .join(","),
            other => other.to_string(),
        })
    }
}

/// Resolver bound to one subcommand's config section.
pub struct Settings<'a> {
    pub file: &'a ConfigFile,
    pub command: &'static str,
}

impl Settings<'_> {
    pub fn lookup<T: FromStr>(&self, key: &str) -> Result<Option<T>, Failure>
    where
        T::Err: std::fmt::Display,
    {
        match self.file.raw(self.command, key) {
            None => Ok(None),
            Some(raw) => raw
                .parse::<T>()
                .map(Some)
                .map_err(|e| Failure::validation(format!("config key {key}: {e}"))),
        }
    }

    /// Flag or environment value, else config value, else `default`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, Failure>
    where
        T::Err: std::fmt::Display,
    {
        Ok(self.pick_opt(flag, key)?.unwrap_or(default))
    }

    pub fn pick_opt<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, Failure>
    where
        T::Err: std::fmt::Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.lookup(key),
        }
    }

    /// Boolean switches can only be turned on from the command line.
    pub fn switch(&self, flag: bool, key: &str) -> Result<bool, Failure> {
        Ok(flag || self.lookup::<bool>(key)?.unwrap_or(false))
    }

    pub fn require<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<T, Failure>
    where
        T::Err: std::fmt::Display,
    {
        self.pick_opt(flag, key)?
            .ok_or_else(|| Failure::validation(format!("--{key} is required")))
    }
}
