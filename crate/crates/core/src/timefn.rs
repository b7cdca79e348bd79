//! Scalar functions of time: constants, closures, and uniformly sampled tables.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};

pub trait TimeFunction: Send + Sync {
    fn value(&self, t: f64) -> f64;
}

impl<F> TimeFunction for F
where
    F: Fn(f64) -> f64 + Send + Sync,
{
    fn value(&self, t: f64) -> f64 {
        self(t)
    }
}

/// Shared handle to a time-dependent parameter.
#[derive(Clone)]
pub struct TimeFn(Arc<dyn TimeFunction>);

impl TimeFn {
    pub fn new(f: impl TimeFunction + 'static) -> Self {
        Self(Arc::new(f))
    }

    pub fn constant(c: f64) -> Self {
        Self::new(move |_t: f64| c)
    }

    pub fn at(&self, t: f64) -> f64 {
        self.0.value(t)
    }
}

impl fmt::Debug for TimeFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("TimeFn(..)")
    }
}

/// Samples on a uniform grid with piecewise-cubic (Catmull-Rom) interpolation.
///
/// Outside the sampled window the end values are held constant.
#[derive(Debug, Clone, PartialEq)]
pub struct Tabulated {
    t0: f64,
    dt: f64,
    values: Vec<f64>,
}

impl Tabulated {
    pub fn new(t0: f64, dt: f64, values: Vec<f64>) -> Result<Self> {
        if !(dt > 0.0) || values.len() < 2 {
            return Err(Error::Table(
                "need at least two samples and a positive spacing".into(),
            ));
        }
        Ok(Self { t0, dt, values })
    }

    pub fn t_end(&self) -> f64 {
        self.t0 + self.dt * (self.values.len() - 1) as f64
    }

    fn sample(&self, i: isize) -> f64 {
        let n = self.values.len() as isize;
        let k = i.clamp(0, n - 1) as usize;
        // linear extrapolation of ghost nodes keeps the end intervals cubic-exact for lines
        if i < 0 {
            2.0 * self.values[0] - self.values[1.min(self.values.len() - 1)]
        } else if i >= n {
            2.0 * self.values[(n - 1) as usize] - self.values[(n - 2).max(0) as usize]
        } else {
            self.values[k]
        }
    }
}

impl TimeFunction for Tabulated {
    fn value(&self, t: f64) -> f64 {
        let s = ((t - self.t0) / self.dt).clamp(0.0, (self.values.len() - 1) as f64);
        let i = (s.floor() as isize).min(self.values.len() as isize - 2);
        let u = s - i as f64;
        let (p0, p1, p2, p3) = (
            self.sample(i - 1),
            self.sample(i),
            self.sample(i + 1),
            self.sample(i + 2),
        );
        let u2 = u * u;
        let u3 = u2 * u;
        0.5 * (2.0 * p1
            + (p2 - p0) * u
            + (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3) * u2
            + (3.0 * p1 - p0 - 3.0 * p2 + p3) * u3)
    }
}

/// Columns of a whitespace-separated parameter table with a header row.
#[derive(Debug, Clone, PartialEq)]
pub struct ParameterTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl ParameterTable {
    /// Parses rows such as `t mu0 alpha nu`. Blank lines and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Table("empty table".into()))?;
        let columns: Vec<String> = header.split_whitespace().map(str::to_owned).collect();
        let mut rows = Vec::new();
        for (n, line) in lines.enumerate() {
            let row = line
                .split_whitespace()
                .map(|s| {
                    s.parse::<f64>()
                        .map_err(|e| Error::Table(format!("row {}: {s}: {e}", n + 1)))
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != columns.len() {
                return Err(Error::Table(format!(
                    "row {} has {} fields, header has {}",
                    n + 1,
                    row.len(),
                    columns.len()
                )));
            }
            rows.push(row);
        }
        if rows.len() < 2 {
            return Err(Error::Table("need at least two rows".into()));
        }
        Ok(Self { columns, rows })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Table(format!("{}: {e}", path.as_ref().display())))?;
        Self::parse(&text)
    }

    /// Interpolant for `name` against the first column, which must be uniformly spaced.
    pub fn column(&self, name: &str) -> Result<Tabulated> {
        let idx = self
            .columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::Table(format!("missing column {name}")))?;
        let t0 = self.rows[0][0];
        let dt = self.rows[1][0] - self.rows[0][0];
        for (i, r) in self.rows.iter().enumerate() {
            let expect = t0 + dt * i as f64;
            if (r[0] - expect).abs() > 1e-9 * (1.0 + expect.abs()) {
                return Err(Error::Table(format!("time column is not uniform at row {}", i + 1)));
            }
        }
        Tabulated::new(t0, dt, self.rows.iter().map(|r| r[idx]).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_reproduced_in_the_interior() {
        // Catmull-Rom is exact for quadratics on interior intervals
        let f = |t: f64| 1.0 + 2.0 * t - 0.5 * t * t;
        let tab = Tabulated::new(0.0, 0.1, (0..50).map(|i| f(0.1 * i as f64)).collect()).unwrap();
        for k in 20..300 {
            let t = 0.1 + k as f64 * 0.013;
            if t > 4.7 {
                break;
            }
            assert!((tab.value(t) - f(t)).abs() < 1e-12, "t = {t}");
        }
        assert!((tab.value(0.3) - f(0.3)).abs() < 1e-14);
    }

    #[test]
    fn table_parsing() {
        let t = ParameterTable::parse("t mu0 alpha nu\n0 1 2 0.1\n0.5 1 2.5 0.1\n1.0 1 3 0.1\n")
            .unwrap();
        let a = t.column("alpha").unwrap();
        assert!((a.value(0.5) - 2.5).abs() < 1e-15);
        assert!((a.value(0.25) - 2.25).abs() < 1e-12);
        assert!(t.column("beta").is_err());
        assert!(ParameterTable::parse("t a\n0 1\n0.1\n").is_err());
        assert!(ParameterTable::parse("t a\n0 1\n0.1 2\n0.3 3\n")
            .unwrap()
            .column("a")
            .is_err());
    }
}
