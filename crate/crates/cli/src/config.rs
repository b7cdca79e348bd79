//! Flat `key = value` run configuration, overridden by command-line flags.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use ncphase::{NcOscillatorSpec, NcParams};

/// A configuration problem; always maps to exit code 2.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

impl From<ncphase::Error> for ConfigError {
    fn from(e: ncphase::Error) -> Self {
        ConfigError(e.to_string())
    }
}

type Result<T> = std::result::Result<T, ConfigError>;

const KNOWN_KEYS: &[&str] = &[
    "m1", "m2", "omega1t", "omega2t", "theta", "eta", "hbar", "kappa", "l", "mu0", "alpha", "nu",
    "sigma0", "sigmadot0", "drive_eps", "drive_freq", "table", "dt", "t_end", "threads", "seed",
    "out", "axis1", "range1", "axis2", "range2",
];

/// Axes a sweep may vary.
pub const SWEEP_AXES: &[&str] = &["m1", "m2", "omega1t", "omega2t", "theta", "eta", "hbar"];

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_kv(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| ConfigError(format!("line {}: expected key = value", n + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        if !KNOWN_KEYS.contains(&k) {
            return Err(ConfigError(format!("line {}: unknown key '{k}'", n + 1)));
        }
        out.insert(k.to_string(), v.to_string());
    }
    Ok(out)
}

/// `START:STOP:COUNT`, inclusive on both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Range {
    pub fn values(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| if i + 1 == self.count { self.stop } else { self.start + step * i as f64 })
            .collect()
    }
}

impl FromStr for Range {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || ConfigError(format!("range '{s}' must be START:STOP:COUNT"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let start: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let stop: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
        if !(start.is_finite() && stop.is_finite()) || start > stop || count < 2 {
            return Err(ConfigError(format!(
                "range '{s}' needs finite START <= STOP and COUNT >= 2"
            )));
        }
        Ok(Range { start, stop, count })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: String,
    pub range: Range,
}

/// Fully resolved settings for one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub m1: f64,
    pub m2: f64,
    pub omega1t: f64,
    pub omega2t: f64,
    pub theta: f64,
    pub eta: f64,
    pub hbar: f64,
    pub kappa: f64,
    pub l: f64,
    /// Explicit commutative-space parameters for the time-dependent run.
    pub mu0: Option<f64>,
    pub alpha: Option<f64>,
    pub nu: Option<f64>,
    pub sigma0: Option<f64>,
    pub sigmadot0: f64,
    pub drive_eps: f64,
    pub drive_freq: f64,
    pub table: Option<PathBuf>,
    pub dt: f64,
    pub t_end: f64,
    pub threads: Option<usize>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub axes: Vec<Axis>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            m1: 1.0,
            m2: 1.0,
            omega1t: 1.0,
            omega2t: 2.0,
            theta: 0.0,
            eta: 0.0,
            hbar: 1.0,
            kappa: 1.0,
            l: 0.0,
            mu0: None,
            alpha: None,
            nu: None,
            sigma0: None,
            sigmadot0: 0.0,
            drive_eps: 0.0,
            drive_freq: 1.0,
            table: None,
            dt: 1e-3,
            t_end: 10.0,
            threads: None,
            seed: None,
            out: None,
            axes: Vec::new(),
        }
    }
}

fn num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| ConfigError(format!("{key}: cannot parse '{v}'")))
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        let mut cfg = Self::default();
        cfg.apply(&parse_kv(&text)?)?;
        Ok(cfg)
    }

    /// Applies `key -> value` settings on top of the current values.
    pub fn apply(&mut self, kv: &BTreeMap<String, String>) -> Result<()> {
        let mut axes: [(Option<String>, Option<Range>); 2] = Default::default();
        for (k, v) in kv {
            match k.as_str() {
                "m1" => self.m1 = num(k, v)?,
                "m2" => self.m2 = num(k, v)?,
                "omega1t" => self.omega1t = num(k, v)?,
                "omega2t" => self.omega2t = num(k, v)?,
                "theta" => self.theta = num(k, v)?,
                "eta" => self.eta = num(k, v)?,
                "hbar" => self.hbar = num(k, v)?,
                "kappa" => self.kappa = num(k, v)?,
                "l" => self.l = num(k, v)?,
                "mu0" => self.mu0 = Some(num(k, v)?),
                "alpha" => self.alpha = Some(num(k, v)?),
                "nu" => self.nu = Some(num(k, v)?),
                "sigma0" => self.sigma0 = Some(num(k, v)?),
                "sigmadot0" => self.sigmadot0 = num(k, v)?,
                "drive_eps" => self.drive_eps = num(k, v)?,
                "drive_freq" => self.drive_freq = num(k, v)?,
                "table" => self.table = Some(PathBuf::from(v)),
                "dt" => self.dt = num(k, v)?,
                "t_end" => self.t_end = num(k, v)?,
                "threads" => self.threads = Some(num(k, v)?),
                "seed" => self.seed = Some(num(k, v)?),
                "out" => self.out = Some(PathBuf::from(v)),
                "axis1" => axes[0].0 = Some(v.clone()),
                "range1" => axes[0].1 = Some(v.parse()?),
                "axis2" => axes[1].0 = Some(v.clone()),
                "range2" => axes[1].1 = Some(v.parse()?),
                _ => return Err(ConfigError(format!("unknown key '{k}'"))),
            }
        }
        let mut parsed = Vec::new();
        for (i, ax) in axes.into_iter().enumerate() {
            match ax {
                (Some(name), Some(range)) => parsed.push(Axis { name, range }),
                (None, None) => {}
                _ => {
                    return Err(ConfigError(format!(
                        "axis{0} and range{0} must be given together",
                        i + 1
                    )))
                }
            }
        }
        if !parsed.is_empty() {
            self.axes = parsed;
        }
        Ok(())
    }

    pub fn set_axes(&mut self, names: &[String], ranges: &[Range]) -> Result<()> {
        if names.len() != ranges.len() {
            return Err(ConfigError("each --param needs a matching --range".into()));
        }
        if names.len() > 2 {
            return Err(ConfigError("at most two sweep axes".into()));
        }
        if !names.is_empty() {
            self.axes = names
                .iter()
                .zip(ranges)
                .map(|(n, r)| Axis {
                    name: n.clone(),
                    range: *r,
                })
                .collect();
        }
        Ok(())
    }

    pub fn validate_axes(&self) -> Result<()> {
        if self.axes.is_empty() {
            return Err(ConfigError("sweep needs at least one --param/--range axis".into()));
        }
        for a in &self.axes {
            if !SWEEP_AXES.contains(&a.name.as_str()) {
                return Err(ConfigError(format!(
                    "cannot sweep '{}'; choose one of {}",
                    a.name,
                    SWEEP_AXES.join(", ")
                )));
            }
        }
        if self.axes.len() == 2 && self.axes[0].name == self.axes[1].name {
            return Err(ConfigError("sweep axes must differ".into()));
        }
        Ok(())
    }

    /// This configuration with one named parameter replaced.
    pub fn with(&self, name: &str, value: f64) -> Self {
        let mut c = self.clone();
        match name {
            "m1" => c.m1 = value,
            "m2" => c.m2 = value,
            "omega1t" => c.omega1t = value,
            "omega2t" => c.omega2t = value,
            "theta" => c.theta = value,
            "eta" => c.eta = value,
            "hbar" => c.hbar = value,
            _ => unreachable!("axis names are validated"),
        }
        c
    }

    pub fn spec(&self) -> ncphase::Result<NcOscillatorSpec> {
        let nc = NcParams::new(self.theta, self.eta, self.hbar)?;
        NcOscillatorSpec::new(self.m1, self.m2, self.omega1t, self.omega2t, nc)
    }
}
