use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::atoms::AtomSpec;
use crate::error::{Error, Result};
use crate::frame_bounds::FrameBounds;

pub const DEFAULT_SAMPLES_PER_UNIT: usize = 64;

/// Uniform midpoint grid `t_j = t0 + (j + 1/2) dt`, `j = 0..len`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub t0: f64,
    pub dt: f64,
    pub len: usize,
}

impl Grid {
    pub fn new(t0: f64, dt: f64, len: usize) -> Result<Self> {
        if !(dt > 0.0) || len == 0 {
            return Err(Error::InvalidInput(format!(
                "grid needs dt > 0 and at least one point (dt = {dt}, len = {len})"
            )));
        }
        Ok(Grid { t0, dt, len })
    }

    /// Covers `[lo, hi]` at `per_unit` points per unit length.
    pub fn covering(lo: f64, hi: f64, per_unit: usize) -> Result<Self> {
        let dt = 1.0 / per_unit as f64;
        let len = ((hi - lo) / dt).round() as usize;
        Self::new(lo, dt, len)
    }

    pub fn point(&self, j: usize) -> f64 {
        self.t0 + (j as f64 + 0.5) * self.dt
    }

    pub fn end(&self) -> f64 {
        self.t0 + self.len as f64 * self.dt
    }

    /// Indices with `t_j` in `[lo, hi]`.
    pub fn index_range(&self, lo: f64, hi: f64) -> std::ops::Range<usize> {
        let first = ((lo - self.t0) / self.dt - 0.5).ceil().max(0.0) as usize;
        let last = ((hi - self.t0) / self.dt - 0.5).floor();
        if last < 0.0 {
            return 0..0;
        }
        let last = (last as usize + 1).min(self.len);
        first.min(last)..last
    }

    pub fn inner(&self, f: &[Complex64], g: &[Complex64]) -> Complex64 {
        f.iter().zip(g).map(|(x, y)| x * y.conj()).sum::<Complex64>() * self.dt
    }

    pub fn norm(&self, f: &[Complex64]) -> f64 {
        (f.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.dt).sqrt()
    }
}

#[derive(Debug, Clone)]
struct SampledAtom {
    start: usize,
    values: Vec<Complex64>,
}

/// A finite family sampled on a grid; inner products are midpoint sums.
#[derive(Debug, Clone)]
pub struct DiscreteFamily {
    grid: Grid,
    atoms: Vec<SampledAtom>,
}

impl DiscreteFamily {
    pub fn from_atoms(grid: Grid, atoms: &[AtomSpec]) -> Self {
        let atoms = atoms
            .par_iter()
            .map(|a| {
                let (lo, hi) = a.support();
                let r = grid.index_range(lo, hi);
                SampledAtom { start: r.start, values: r.map(|j| a.eval(grid.point(j))).collect() }
            })
            .collect();
        DiscreteFamily { grid, atoms }
    }

    /// `{e^{2πi b n t} rect(t - a μ_{n,k})}` on a unit-step lattice with the
    /// full set of `per_unit` frequencies `n ∈ [-per_unit/2 + 1, per_unit/2]`,
    /// which makes the unperturbed family an orthonormal basis of the grid
    /// functions. `shift(n, k)` returns the position `μ_{n,k}`.
    pub fn complete_rect_family(
        grid: Grid,
        k_range: std::ops::RangeInclusive<i64>,
        shift: impl Fn(i64, i64) -> f64 + Sync,
    ) -> Result<Self> {
        let per_unit = (1.0 / grid.dt).round() as i64;
        if ((per_unit as f64) * grid.dt - 1.0).abs() > 1e-12 || per_unit % 2 != 0 {
            return Err(Error::InvalidInput(
                "complete rect family needs an even integer number of samples per unit".into(),
            ));
        }
        let freqs: Vec<i64> = (-per_unit / 2 + 1..=per_unit / 2).collect();
        let pairs: Vec<(i64, i64)> = k_range.flat_map(|k| freqs.iter().map(move |&n| (n, k))).collect();
        let atoms = pairs
            .par_iter()
            .map(|&(n, k)| {
                let s = shift(n, k);
                // half-open cell [s - 1/2, s + 1/2) so adjacent cells never share a point
                let first = ((s - 0.5 - grid.t0) / grid.dt - 0.5).ceil().max(0.0) as usize;
                let last = (((s + 0.5 - grid.t0) / grid.dt - 0.5).ceil().max(0.0) as usize).min(grid.len);
                let first = first.min(last);
                SampledAtom {
                    start: first,
                    values: (first..last)
                        .map(|j| Complex64::from_polar(1.0, 2.0 * PI * n as f64 * grid.point(j)))
                        .collect(),
                }
            })
            .collect();
        Ok(DiscreteFamily { grid, atoms })
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// `c_j = ⟨f, g_j⟩`.
    pub fn analysis(&self, f: &[Complex64]) -> Vec<Complex64> {
        self.atoms
            .par_iter()
            .map(|a| {
                a.values
                    .iter()
                    .zip(&f[a.start..a.start + a.values.len()])
                    .map(|(g, x)| x * g.conj())
                    .sum::<Complex64>()
                    * self.grid.dt
            })
            .collect()
    }

    /// `Σ_j c_j g_j`.
    pub fn synthesis(&self, c: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.grid.len];
        for (a, &cj) in self.atoms.iter().zip(c) {
            for (o, g) in out[a.start..a.start + a.values.len()].iter_mut().zip(&a.values) {
                *o += cj * g;
            }
        }
        out
    }

    pub fn frame_operator(&self, f: &[Complex64]) -> Vec<Complex64> {
        self.synthesis(&self.analysis(f))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionReport {
    pub iterations: usize,
    /// `‖f - f_m‖ / ‖f‖` per step (`m = 1..`), when the true signal is known.
    pub errors: Vec<f64>,
    /// `‖S f - S f_m‖ / ‖S f‖` per step.
    pub residuals: Vec<f64>,
    /// `(B - A)/(B + A)`.
    pub predicted_rate: f64,
    /// Largest per-step error ratio once errors are above 1e-12 and at least
    /// five steps in.
    pub asymptotic_ratio: f64,
    pub relaxation: f64,
}

/// Frame algorithm `f_{m+1} = f_m + (2/(A+B)) (S f - S f_m)`, started at
/// `f_0 = 0`, from the analysis coefficients `coeffs = {⟨f, g_j⟩}`.
///
/// Returns the final iterate and the report. With `truth` given, relative
/// errors are tracked and a per-step error ratio above 1 for three steps in a
/// row is reported as inconsistent bounds; otherwise the residual plays that
/// role.
pub fn frame_reconstruct(
    coeffs: &[Complex64],
    family: &DiscreteFamily,
    bounds: &FrameBounds,
    iters: usize,
    truth: Option<&[Complex64]>,
) -> Result<(Vec<Complex64>, ReconstructionReport)> {
    if !(bounds.lower > 0.0) {
        return Err(Error::InvalidInput("lower frame bound must be positive".into()));
    }
    if coeffs.len() != family.len() {
        return Err(Error::InvalidInput(format!(
            "{} coefficients for a family of {} atoms",
            coeffs.len(),
            family.len()
        )));
    }
    let grid = family.grid();
    let lambda = 2.0 / (bounds.lower + bounds.upper);
    let target = family.synthesis(coeffs);
    let target_norm = grid.norm(&target).max(f64::MIN_POSITIVE);
    let truth_norm = truth.map(|t| grid.norm(t).max(f64::MIN_POSITIVE));
    let mut f = vec![Complex64::new(0.0, 0.0); grid.len];
    let mut errors = Vec::with_capacity(iters);
    let mut residuals = Vec::with_capacity(iters);
    let mut sf = vec![Complex64::new(0.0, 0.0); grid.len];
    let mut rising = 0;
    let mut asymptotic_ratio = 0.0f64;
    for m in 0..iters {
        for ((x, t), s) in f.iter_mut().zip(&target).zip(&sf) {
            *x += (t - s) * lambda;
        }
        sf = family.frame_operator(&f);
        let diff: Vec<Complex64> = target.iter().zip(&sf).map(|(t, s)| t - s).collect();
        residuals.push(grid.norm(&diff) / target_norm);
        let tracked = if let (Some(t), Some(tn)) = (truth, truth_norm) {
            let e: Vec<Complex64> = t.iter().zip(&f).map(|(x, y)| x - y).collect();
            errors.push(grid.norm(&e) / tn);
            &errors
        } else {
            &residuals
        };
        if m >= 1 {
            let prev = tracked[m - 1];
            let cur = tracked[m];
            if prev > 0.0 {
                let ratio = cur / prev;
                if m >= 5 && prev > 1e-12 {
                    asymptotic_ratio = asymptotic_ratio.max(ratio);
                }
                rising = if ratio > 1.0 && prev > 1e-13 { rising + 1 } else { 0 };
                if rising >= 3 {
                    return Err(Error::InconsistentBounds { step: m + 1 });
                }
            }
        }
    }
    Ok((
        f,
        ReconstructionReport {
            iterations: iters,
            errors,
            residuals,
            predicted_rate: (bounds.upper - bounds.lower) / (bounds.upper + bounds.lower),
            asymptotic_ratio,
            relaxation: lambda,
        },
    ))
}
