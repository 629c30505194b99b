//! `key = value` configuration files. Keys mirror the long flags without the
//! leading dashes; flags given on the command line win.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::path::Path;
use std::str::FromStr;

use anyhow::{bail, Context, Result};

#[derive(Debug, Default)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            None => Ok(Self::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .with_context(|| format!("reading config file {}", p.display()))?;
                Self::parse(&text).with_context(|| format!("in config file {}", p.display()))
            }
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                bail!("line {}: expected key = value, got {raw:?}", i + 1);
            };
            let key = k.trim().trim_start_matches("--").to_string();
            if values.insert(key.clone(), v.trim().to_string()).is_some() {
                bail!("line {}: duplicate key {key:?}", i + 1);
            }
        }
        Ok(Self { values })
    }

    /// The flag value if given, else the parsed config value.
    pub fn merge<T>(&mut self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        let from_file = self.values.remove(key);
        if flag.is_some() {
            return Ok(flag);
        }
        from_file
            .map(|v| {
                v.parse::<T>()
                    .map_err(|e| anyhow::anyhow!("config key {key}: {e}"))
            })
            .transpose()
    }

    /// Fails on keys no command consumed.
    pub fn finish(self) -> Result<()> {
        if let Some(k) = self.values.keys().next() {
            bail!("unknown config key {k:?}");
        }
        Ok(())
    }
}
