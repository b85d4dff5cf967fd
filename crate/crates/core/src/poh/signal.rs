use std::fmt;
use std::io::{Read, Write};
use std::ops::{Add, Mul};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform node grid `t_j = t0 + j·dt`, `j = 0..len`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NodeGrid {
    pub t0: f64,
    pub dt: f64,
    pub len: usize,
}

impl NodeGrid {
    pub fn new(t0: f64, dt: f64, len: usize) -> Result<Self> {
        if !(dt > 0.0 && dt.is_finite()) || !t0.is_finite() || len == 0 {
            return Err(Error::InvalidInput(format!(
                "node grid needs finite t0, dt > 0 and at least one node (t0 = {t0}, dt = {dt}, len = {len})"
            )));
        }
        Ok(NodeGrid { t0, dt, len })
    }

    /// Nodes from `lo` to `hi` inclusive at `per_unit` nodes per unit length.
    pub fn spanning(lo: f64, hi: f64, per_unit: usize) -> Result<Self> {
        if per_unit == 0 || !(hi >= lo) {
            return Err(Error::InvalidInput(format!(
                "cannot span [{lo}, {hi}] at {per_unit} nodes per unit"
            )));
        }
        let dt = 1.0 / per_unit as f64;
        let len = ((hi - lo) * per_unit as f64).round() as usize + 1;
        Self::new(lo, dt, len)
    }

    pub fn node(&self, j: usize) -> f64 {
        self.t0 + j as f64 * self.dt
    }

    pub fn last(&self) -> f64 {
        self.node(self.len - 1)
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len).map(|j| self.node(j))
    }
}

/// Samples of a signal on a [`NodeGrid`], linearly interpolated in between.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignalGrid<V = f64> {
    pub t0: f64,
    pub dt: f64,
    pub samples: Vec<V>,
}

impl<V> SignalGrid<V>
where
    V: Copy + Add<Output = V> + Mul<f64, Output = V>,
{
    pub fn new(t0: f64, dt: f64, samples: Vec<V>) -> Result<Self> {
        NodeGrid::new(t0, dt, samples.len())?;
        Ok(SignalGrid { t0, dt, samples })
    }

    pub fn from_fn(grid: NodeGrid, f: impl Fn(f64) -> V) -> Self {
        SignalGrid { t0: grid.t0, dt: grid.dt, samples: grid.nodes().map(f).collect() }
    }

    pub fn grid(&self) -> NodeGrid {
        NodeGrid { t0: self.t0, dt: self.dt, len: self.samples.len() }
    }

    /// `[first node, last node]`.
    pub fn support(&self) -> (f64, f64) {
        (self.t0, self.grid().last())
    }

    /// Linear interpolation; points outside the node span are an error, with
    /// a slack of `1e-9·dt` for rounding.
    pub fn interpolate(&self, t: f64) -> Result<V> {
        let (lo, hi) = self.support();
        let slack = 1e-9 * self.dt;
        if !(t >= lo - slack && t <= hi + slack) {
            return Err(Error::Extrapolation { t, lo, hi });
        }
        let n = self.samples.len();
        if n == 1 {
            return Ok(self.samples[0]);
        }
        let x = ((t - self.t0) / self.dt).clamp(0.0, (n - 1) as f64);
        let j = (x.floor() as usize).min(n - 2);
        let w = x - j as f64;
        Ok(self.samples[j] * (1.0 - w) + self.samples[j + 1] * w)
    }
}

impl SignalGrid<f64> {
    /// Reads two-column CSV with header `t,value`. Times must be uniformly
    /// spaced and increasing.
    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers()?.clone();
        if headers.len() != 2 || &headers[0] != "t" || &headers[1] != "value" {
            return Err(Error::InvalidInput(format!(
                "signal CSV header must be `t,value`, found `{}`",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut ts = Vec::new();
        let mut vs = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            let parse = |i: usize| -> Result<f64> {
                rec[i]
                    .parse::<f64>()
                    .map_err(|_| Error::InvalidInput(format!("not a number in signal CSV: {:?}", &rec[i])))
            };
            ts.push(parse(0)?);
            vs.push(parse(1)?);
        }
        if ts.is_empty() {
            return Err(Error::InvalidInput("signal CSV has no samples".into()));
        }
        let dt = if ts.len() > 1 { (ts[ts.len() - 1] - ts[0]) / (ts.len() - 1) as f64 } else { 1.0 };
        for (j, &t) in ts.iter().enumerate() {
            if (t - (ts[0] + j as f64 * dt)).abs() > 1e-6 * dt {
                return Err(Error::InvalidInput(format!(
                    "signal CSV times must be uniformly spaced; row {} has t = {t}",
                    j + 1
                )));
            }
        }
        SignalGrid::new(ts[0], dt, vs)
    }

    pub fn read_csv_path(path: &Path) -> Result<Self> {
        Self::read_csv(std::fs::File::open(path)?)
    }

    /// Writes `t,value` rows; numbers use the shortest representation that
    /// parses back to the same `f64`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["t", "value"])?;
        for (j, v) in self.samples.iter().enumerate() {
            let t = self.t0 + j as f64 * self.dt;
            w.write_record([t.to_string(), v.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }
}

/// A real signal that can be evaluated pointwise.
pub trait SignalSource: Sync {
    fn value(&self, t: f64) -> Result<f64>;

    /// Interval outside which evaluation fails; `None` for signals defined
    /// on the whole line.
    fn support(&self) -> Option<(f64, f64)> {
        None
    }

    fn name(&self) -> String;
}

impl SignalSource for SignalGrid<f64> {
    fn value(&self, t: f64) -> Result<f64> {
        self.interpolate(t)
    }

    fn support(&self) -> Option<(f64, f64)> {
        Some(SignalGrid::support(self))
    }

    fn name(&self) -> String {
        format!("grid[{} samples]", self.samples.len())
    }
}

/// Wraps a closure as a signal.
pub struct FnSignal<F> {
    pub label: String,
    pub f: F,
}

impl<F: Fn(f64) -> f64 + Sync> FnSignal<F> {
    pub fn new(label: impl Into<String>, f: F) -> Self {
        FnSignal { label: label.into(), f }
    }
}

impl<F: Fn(f64) -> f64 + Sync> SignalSource for FnSignal<F> {
    fn value(&self, t: f64) -> Result<f64> {
        Ok((self.f)(t))
    }

    fn name(&self) -> String {
        self.label.clone()
    }
}

/// Test signals defined on the whole line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Builtin {
    /// `cos(2π(0.02 t + 0.004 t²))`
    Chirp,
    /// Constant on each cell `[n - 1/2, n + 1/2)`, with values cycling
    /// through `{-1, -2/3, ..., 1}`.
    Staircase,
    /// `exp(-t² / 128)`
    Gaussian,
}

impl Builtin {
    pub const ALL: [Builtin; 3] = [Builtin::Chirp, Builtin::Staircase, Builtin::Gaussian];

    pub fn eval(self, t: f64) -> f64 {
        match self {
            Builtin::Chirp => (2.0 * std::f64::consts::PI * (0.02 * t + 0.004 * t * t)).cos(),
            Builtin::Staircase => {
                let n = (t + 0.5).floor() as i64;
                (n.rem_euclid(7) - 3) as f64 / 3.0
            }
            Builtin::Gaussian => (-t * t / 128.0).exp(),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Builtin::Chirp => "chirp",
            Builtin::Staircase => "staircase",
            Builtin::Gaussian => "gaussian",
        })
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Builtin::ALL.into_iter().find(|b| b.to_string() == s).ok_or_else(|| {
            Error::InvalidInput(format!(
                "unknown builtin signal {s:?} (expected chirp, staircase or gaussian)"
            ))
        })
    }
}

impl SignalSource for Builtin {
    fn value(&self, t: f64) -> Result<f64> {
        Ok(self.eval(t))
    }

    fn name(&self) -> String {
        self.to_string()
    }
}
