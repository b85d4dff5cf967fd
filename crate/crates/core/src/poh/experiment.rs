use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::budget::{jitter_budget, BudgetTarget, JitterModel};
use super::hold::hold_reconstruct;
use super::jitter::{sample_with_jitter, JitterDistribution, JitterRealization};
use super::signal::{NodeGrid, SignalGrid, SignalSource};
use crate::error::{Error, Result};
use crate::frame_bounds::{BoundKind, FrameBounds, LatticeParams};
use crate::stability::{certify_rect, Certificate, JitterProfile};
use crate::verifier::{frame_reconstruct, DiscreteFamily, Grid, ReconstructionReport};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Hold order.
    pub p: i64,
    #[serde(rename = "T")]
    pub period: f64,
    /// Jitter bound in units of `T`.
    pub eps: f64,
    pub n_min: i64,
    pub n_max: i64,
    pub seed: u64,
    pub distribution: JitterDistribution,
    /// Output nodes per sampling period for the hold.
    pub hold_per_period: usize,
    /// Grid points per sampling period for the frame algorithm; even.
    pub frame_per_period: usize,
    pub iterations: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            p: 1,
            period: 1.0,
            eps: 0.0,
            n_min: -32,
            n_max: 32,
            seed: 0,
            distribution: JitterDistribution::Uniform,
            hold_per_period: 64,
            frame_per_period: 32,
            iterations: 70,
        }
    }
}

/// Where the frame algorithm got its bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundsSource {
    Certificate,
    /// Power-iteration estimate on the sampled frame operator, used when the
    /// jitter exceeds the budget.
    Estimate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameBranchReport {
    /// Relative L² error of the last iterate on the interior window; `None`
    /// when the family is numerically not a frame.
    pub error: Option<f64>,
    pub bounds: Option<FrameBounds>,
    pub bounds_source: BoundsSource,
    pub certificate: Option<Certificate>,
    pub iteration: Option<ReconstructionReport>,
    pub atoms: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub signal: String,
    pub config: ExperimentConfig,
    /// Always `single-row`: the held samples jitter only the DC row of the
    /// zero-order-hold family.
    pub model: JitterModel,
    /// Largest certified bound for that model, in units of `T`.
    pub budget: f64,
    pub certified: bool,
    pub note: Option<String>,
    /// `[lo, hi]` in time units where errors are measured.
    pub interior: (f64, f64),
    /// Relative L² error of the hold output on the interior window.
    pub hold_error: f64,
    pub frame: FrameBranchReport,
    /// `ε_n` for `n = n_min..=n_max`.
    pub epsilons: Vec<f64>,
}

/// Relative discrete L² error of `approx` against `truth` (absolute when the
/// truth vanishes).
fn relative_error(truth: impl Iterator<Item = Complex64>, approx: impl Iterator<Item = Complex64>) -> f64 {
    let (mut num, mut den) = (0.0, 0.0);
    for (t, a) in truth.zip(approx) {
        num += (t - a).norm_sqr();
        den += t.norm_sqr();
    }
    if den > 0.0 {
        (num / den).sqrt()
    } else {
        num.sqrt()
    }
}

/// Extreme eigenvalues of the sampled frame operator by power iteration, with
/// a 1% margin on the upper end. Any positive lower value keeps the frame
/// algorithm contractive as long as the upper value dominates the spectrum.
fn estimate_frame_bounds(family: &DiscreteFamily) -> Option<FrameBounds> {
    let n = family.grid().len;
    let start: Vec<Complex64> =
        (0..n).map(|j| Complex64::new(1.0 + 0.5 * (j as f64).sin(), 0.25 * (0.7 * j as f64).cos())).collect();
    let norm = |v: &[Complex64]| v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let rayleigh = |v: &[Complex64], w: &[Complex64]| {
        v.iter().zip(w).map(|(x, y)| (x.conj() * y).re).sum::<f64>()
            / v.iter().map(|z| z.norm_sqr()).sum::<f64>()
    };
    let power = |op: &dyn Fn(&[Complex64]) -> Vec<Complex64>| {
        let mut v = start.clone();
        let mut lambda = 0.0;
        for _ in 0..400 {
            let w = op(&v);
            lambda = rayleigh(&v, &w);
            let s = norm(&w);
            if s == 0.0 {
                return 0.0;
            }
            v = w.into_iter().map(|z| z / s).collect();
        }
        lambda
    };
    let top = power(&|v| family.frame_operator(v));
    let shift = 1.01 * top;
    let bottom = shift
        - power(&|v| {
            let s = family.frame_operator(v);
            v.iter().zip(s).map(|(x, y)| x * shift - y).collect()
        });
    if !(bottom > 1e-9 * top) {
        return None;
    }
    FrameBounds::new(bottom.min(shift), shift, BoundKind::NumericalEstimate).ok()
}

/// Samples `f` with jitter, holds the samples with `rect^(p)`, and
/// separately reconstructs `f` with the frame algorithm from its coefficients
/// in the jittered zero-order-hold family (lattice `a = b = 1` in units of
/// `T`, the `n = 0` row shifted to the sample instants).
///
/// When `eps` is within the single-row budget the frame algorithm runs with
/// the certified bounds; otherwise the report says so and the bounds are
/// estimated from the sampled frame operator.
pub fn reconstruction_experiment(f: &dyn SignalSource, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    if cfg.n_min > cfg.n_max {
        return Err(Error::InvalidInput(format!("empty index range {}..={}", cfg.n_min, cfg.n_max)));
    }
    if cfg.hold_per_period == 0 || cfg.frame_per_period == 0 || !cfg.frame_per_period.is_multiple_of(2) {
        return Err(Error::InvalidInput(
            "grid densities must be positive, and the frame density even".into(),
        ));
    }
    let t = cfg.period;
    let jit = JitterRealization::new(t, cfg.eps, cfg.seed, cfg.distribution)?;
    let samples = sample_with_jitter(f, &jit, cfg.n_min..=cfg.n_max)?;

    let trim = (cfg.p as f64 + cfg.eps) * t;
    let interior = (cfg.n_min as f64 * t + trim, cfg.n_max as f64 * t - trim);
    if !(interior.0 < interior.1) {
        return Err(Error::InvalidInput(format!(
            "index range {}..={} leaves no interior after trimming (p + eps)·T from each end",
            cfg.n_min, cfg.n_max
        )));
    }

    // hold branch
    let per = cfg.hold_per_period;
    let nodes =
        NodeGrid::new(cfg.n_min as f64 * t, t / per as f64, (cfg.n_max - cfg.n_min) as usize * per + 1)?;
    let held: SignalGrid = hold_reconstruct(&samples, cfg.p, t, nodes)?;
    let inside: Vec<(f64, f64)> = nodes
        .nodes()
        .zip(held.samples.iter().copied())
        .filter(|(x, _)| *x >= interior.0 && *x <= interior.1)
        .collect();
    let truth: Vec<f64> = inside.iter().map(|(x, _)| f.value(*x)).collect::<Result<_>>()?;
    let hold_error = relative_error(
        truth.iter().map(|&v| Complex64::new(v, 0.0)),
        inside.iter().map(|&(_, v)| Complex64::new(v, 0.0)),
    );

    // frame branch, in units of T
    let (mut k_lo, mut k_hi) = (cfg.n_min, cfg.n_max);
    if let Some((lo, hi)) = f.support() {
        k_lo = k_lo.max((lo / t + 0.5).ceil() as i64);
        k_hi = k_hi.min((hi / t - 0.5).floor() as i64);
        if k_lo > k_hi {
            return Err(Error::InvalidInput("signal support holds no full sampling cell".into()));
        }
    }
    let grid = Grid::covering(k_lo as f64 - 0.5, k_hi as f64 + 0.5, cfg.frame_per_period)?;
    let family =
        DiscreteFamily::complete_rect_family(
            grid,
            k_lo..=k_hi,
            |n, k| {
                if n == 0 {
                    jit.mu(k)
                } else {
                    k as f64
                }
            },
        )?;
    let signal: Vec<Complex64> = (0..grid.len)
        .map(|j| f.value(t * grid.point(j)).map(|v| Complex64::new(v, 0.0)))
        .collect::<Result<_>>()?;

    let lat = LatticeParams::new(1.0, 1.0)?;
    let budget = jitter_budget(1, t, lat, JitterModel::SingleRow, BudgetTarget::Riesz)?.budget;
    let certified = cfg.eps <= budget;
    let (certificate, bounds, source) = if certified {
        let cert = certify_rect(lat, &JitterProfile::single_row(cfg.eps)?)?;
        let b = cert.absolute_bounds;
        (Some(cert), b, BoundsSource::Certificate)
    } else {
        (None, estimate_frame_bounds(&family), BoundsSource::Estimate)
    };
    let note = (!certified).then(|| {
        format!(
            "no certificate: eps = {} exceeds the single-row budget {budget}; frame bounds are estimated",
            cfg.eps
        )
    });

    let (error, iteration) = match &bounds {
        Some(b) => {
            let coeffs = family.analysis(&signal);
            let (est, rep) = frame_reconstruct(&coeffs, &family, b, cfg.iterations, Some(&signal))?;
            let r = grid.index_range(interior.0 / t, interior.1 / t);
            let e = relative_error(signal[r.clone()].iter().copied(), est[r].iter().copied());
            (Some(e), Some(rep))
        }
        None => (None, None),
    };

    Ok(ExperimentReport {
        signal: f.name(),
        config: cfg.clone(),
        model: JitterModel::SingleRow,
        budget,
        certified,
        note,
        interior,
        hold_error,
        frame: FrameBranchReport {
            error,
            bounds,
            bounds_source: source,
            certificate,
            iteration,
            atoms: family.len(),
        },
        epsilons: samples.iter().map(|s| s.epsilon).collect(),
    })
}

/// The hold output of one configuration on its full node grid, for writing
/// out as CSV.
pub fn hold_output(f: &dyn SignalSource, cfg: &ExperimentConfig) -> Result<SignalGrid> {
    let t = cfg.period;
    let jit = JitterRealization::new(t, cfg.eps, cfg.seed, cfg.distribution)?;
    let samples = sample_with_jitter(f, &jit, cfg.n_min..=cfg.n_max)?;
    let per = cfg.hold_per_period.max(1);
    let nodes = NodeGrid::new(
        cfg.n_min as f64 * t,
        t / per as f64,
        (cfg.n_max - cfg.n_min).max(0) as usize * per + 1,
    )?;
    hold_reconstruct(&samples, cfg.p, t, nodes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poh::signal::Builtin;

    fn cfg(p: i64, eps: f64, seed: u64) -> ExperimentConfig {
        ExperimentConfig { p, eps, seed, n_min: -20, n_max: 20, ..Default::default() }
    }

    #[test]
    fn staircase_without_jitter_is_held_exactly() {
        let r = reconstruction_experiment(&Builtin::Staircase, &cfg(1, 0.0, 1)).unwrap();
        assert_eq!(r.hold_error, 0.0);
        assert!(r.certified);
    }

    #[test]
    fn certified_frame_branch_converges() {
        let r = reconstruction_experiment(&Builtin::Chirp, &cfg(1, 0.1, 7)).unwrap();
        assert!(r.certified && r.note.is_none());
        assert_eq!(r.frame.bounds_source, BoundsSource::Certificate);
        let e = r.frame.error.unwrap();
        assert!(e < 1e-6, "frame error {e}");
        assert!(r.hold_error > 1e-3);
        assert!(r.epsilons.iter().all(|e| e.abs() <= 0.1));
    }

    #[test]
    fn above_budget_is_flagged_but_measured() {
        let r = reconstruction_experiment(&Builtin::Gaussian, &cfg(1, 0.3, 2)).unwrap();
        assert!(!r.certified);
        assert!(r.frame.certificate.is_none());
        assert!(r.note.as_deref().unwrap().contains("no certificate"));
        assert!(r.hold_error.is_finite());
    }

    #[test]
    fn reports_are_reproducible() {
        let a = serde_json::to_string(&reconstruction_experiment(&Builtin::Chirp, &cfg(2, 0.05, 3)).unwrap())
            .unwrap();
        let b = serde_json::to_string(&reconstruction_experiment(&Builtin::Chirp, &cfg(2, 0.05, 3)).unwrap())
            .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn empty_interior_is_rejected() {
        let c = ExperimentConfig { p: 4, n_min: -3, n_max: 3, ..Default::default() };
        assert!(reconstruction_experiment(&Builtin::Chirp, &c).is_err());
    }
}
