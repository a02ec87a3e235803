//! Run configuration: defaults, an optional `key = value` file, then command-line overrides.

use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub ell: u32,
    pub window: u32,
    pub suite: Option<String>,
    pub budget: usize,
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { ell: 3, window: 12, suite: None, budget: 50, seed: 0, cache_dir: None, output: None }
    }
}

fn parse<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Parse(format!("bad value {v:?} for {key}")))
}

impl RunConfig {
    /// Applies `key = value` lines; `#` starts a comment and quotes around values are dropped.
    pub fn apply_str(&mut self, text: &str) -> Result<()> {
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", no + 1)))?;
            let (k, v) = (k.trim(), v.trim().trim_matches('"'));
            match k {
                "ell" => self.ell = parse(k, v)?,
                "window" => self.window = parse(k, v)?,
                "suite" => self.suite = Some(v.to_string()),
                "budget" => self.budget = parse(k, v)?,
                "seed" => self.seed = parse(k, v)?,
                "cache" | "cache_dir" => self.cache_dir = Some(PathBuf::from(v)),
                "output" => self.output = Some(PathBuf::from(v)),
                _ => return Err(Error::Parse(format!("line {}: unknown key {k:?}", no + 1))),
            }
        }
        Ok(())
    }

    pub fn apply_file(&mut self, path: &Path) -> Result<()> {
        self.apply_str(&std::fs::read_to_string(path)?)
    }

    /// ℓ odd and at least 3, W ≥ 2(ℓ − 1).
    pub fn validate(&self) -> Result<()> {
        if self.ell < 3 || self.ell % 2 == 0 {
            return Err(Error::InvalidArgument(format!("ℓ must be odd and at least 3, got {}", self.ell)));
        }
        if self.window < 2 * (self.ell - 1) {
            return Err(Error::InvalidArgument(format!("window {} is below 2(ℓ − 1) = {}", self.window, 2 * (self.ell - 1))));
        }
        Ok(())
    }
}
