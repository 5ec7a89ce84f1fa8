//! Run configuration: defaults, then an optional `key=value` file, then flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use zetabound::{EMConfig, MAX_K, MAX_N, POLE_BAND};

use crate::CliError;

/// Environment variable naming the config file.
pub const CONFIG_ENV: &str = "ZETABOUND_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("format must be csv or json, got '{other}'")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Truncation target for the Euler-Maclaurin evaluator.
    pub target: f64,
    pub max_n: usize,
    pub max_k: usize,
    pub pole_band: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub jobs: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        let em = EMConfig::default();
        Self {
            target: em.target_abs_error.unwrap_or(1e-15),
            max_n: MAX_N,
            max_k: MAX_K,
            pole_band: POLE_BAND,
            format: Format::Csv,
            out: None,
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

/// Values given on the command line; `None` means "not given".
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub target: Option<f64>,
    pub max_n: Option<usize>,
    pub max_k: Option<usize>,
    pub pole_band: Option<f64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl RunConfig {
    /// Applies the config file (explicit path, else `$ZETABOUND_CONFIG`) and
    /// then the flag overrides.
    pub fn resolve(file: Option<&Path>, overrides: &Overrides) -> Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        let env_path = std::env::var_os(CONFIG_ENV).map(PathBuf::from);
        if let Some(path) = file.map(Path::to_path_buf).or(env_path) {
            let text = std::fs::read_to_string(&path).map_err(|e| {
                CliError::Config(format!("cannot read config {}: {e}", path.display()))
            })?;
            cfg.apply_file(&text)?;
        }
        cfg.apply(overrides);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn apply_file(&mut self, text: &str) -> Result<(), CliError> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("config line {}: expected key=value", lineno + 1))
            })?;
            let (key, value) = (key.trim(), value.trim());
            let bad =
                |e: String| CliError::Config(format!("config line {}: {key}: {e}", lineno + 1));
            match key {
                "target" => self.target = parse(value).map_err(bad)?,
                "max_n" => self.max_n = parse(value).map_err(bad)?,
                "max_k" => self.max_k = parse(value).map_err(bad)?,
                "pole_band" => self.pole_band = parse(value).map_err(bad)?,
                "format" => self.format = value.parse().map_err(bad)?,
                "out" => self.out = Some(PathBuf::from(value)),
                "jobs" => self.jobs = parse(value).map_err(bad)?,
                other => {
                    return Err(CliError::Config(format!(
                        "config line {}: unknown key '{other}'",
                        lineno + 1
                    )))
                }
            }
        }
        Ok(())
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(v) = o.target {
            self.target = v;
        }
        if let Some(v) = o.max_n {
            self.max_n = v;
        }
        if let Some(v) = o.max_k {
            self.max_k = v;
        }
        if let Some(v) = o.pole_band {
            self.pole_band = v;
        }
        if let Some(v) = o.format {
            self.format = v;
        }
        if let Some(v) = &o.out {
            self.out = Some(v.clone());
        }
        if let Some(v) = o.jobs {
            self.jobs = v;
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(CliError::Config(format!(
                    "{name} must be positive, got {v}"
                )))
            }
        };
        positive("target", self.target)?;
        positive("pole_band", self.pole_band)?;
        if self.max_n == 0 || self.max_k == 0 || self.jobs == 0 {
            return Err(CliError::Config(
                "max_n, max_k and jobs must be positive".into(),
            ));
        }
        if self.max_k > MAX_K {
            return Err(CliError::Config(format!("max_k is at most {MAX_K}")));
        }
        Ok(())
    }

    /// Evaluator settings: start at `N = 32, K = 4` (or the limits, if lower).
    pub fn em_config(&self) -> EMConfig {
        let base = EMConfig::default();
        EMConfig {
            n_terms: base.n_terms.min(self.max_n),
            k_bernoulli: base.k_bernoulli.min(self.max_k),
            target_abs_error: Some(self.target),
            max_n: self.max_n,
            max_k: self.max_k,
            pole_band: self.pole_band,
        }
    }
}

fn parse<T: FromStr>(value: &str) -> Result<T, String>
where
    T::Err: fmt::Display,
{
    value.parse::<T>().map_err(|e| format!("'{value}': {e}"))
}
