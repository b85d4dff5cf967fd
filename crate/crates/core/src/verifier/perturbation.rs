use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::atoms::{cross_gram, gram_matrix, AtomSpec, GramMatrix};
use super::spectrum::{gram_spectrum_extrema, DEFAULT_SPECTRUM_TOL};
use crate::bspline::BSplineWindow;
use crate::error::{Error, Result};
use crate::frame_bounds::LatticeParams;
use crate::stability::{perturbation_bound, perturbation_bound_conservative, JitterProfile};

/// `‖Σ_k α_k (rect(t - ak) - rect(t - aμ_k))‖²`, `k = 0..n-1`.
///
/// The function is piecewise constant with breakpoints `ak ± 1/2` and
/// `aμ_k ± 1/2`; a sweep over the sorted breakpoints accumulates
/// `|value|² × length` cell by cell.
pub fn exact_perturbation_norm(a: f64, alphas: &[Complex64], mus: &[f64]) -> Result<f64> {
    if alphas.len() != mus.len() {
        return Err(Error::InvalidInput(format!(
            "{} coefficients but {} positions",
            alphas.len(),
            mus.len()
        )));
    }
    let mut events: Vec<(f64, Complex64)> = Vec::with_capacity(4 * alphas.len());
    for (k, (&alpha, &mu)) in alphas.iter().zip(mus).enumerate() {
        let c = a * k as f64;
        let s = a * mu;
        events.push((c - 0.5, alpha));
        events.push((c + 0.5, -alpha));
        events.push((s - 0.5, -alpha));
        events.push((s + 0.5, alpha));
    }
    events.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut value = Complex64::new(0.0, 0.0);
    let mut acc = 0.0;
    let mut i = 0;
    while i < events.len() {
        let t = events[i].0;
        while i < events.len() && events[i].0 == t {
            value += events[i].1;
            i += 1;
        }
        if i < events.len() {
            acc += value.norm_sqr() * (events[i].0 - t);
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbationTrial {
    pub a: f64,
    pub ell: f64,
    pub n: usize,
    pub norm_sq: f64,
    pub coeff_energy: f64,
    pub rhs_statement: f64,
    pub rhs_conservative: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbationReport {
    pub seed: u64,
    pub trials: usize,
    pub gap_case_trials: usize,
    pub statement_violations: Vec<PerturbationTrial>,
    pub conservative_violations: Vec<PerturbationTrial>,
    /// Largest `norm_sq / (rhs_statement · Σ|α|²)` seen.
    pub worst_statement_ratio: f64,
    /// The tightest constant never violated: `"statement"`, `"conservative"` or `"none"`.
    pub tightest_unviolated: String,
    pub passed: bool,
}

const RELATIVE_SLACK: f64 = 1e-12;

/// Random trials of the perturbed-translate inequality. A quarter of the
/// trials are drawn from the gap case `a > 1`, `0 < ℓ ≤ (a-1)/(2a)`. Every
/// trial is tested against the stated constant and against the larger one;
/// the suite passes when the larger constant is never exceeded.
pub fn perturbation_trials(trials: usize, seed: u64) -> PerturbationReport {
    let results: Vec<(bool, PerturbationTrial)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let gap = t % 4 == 0;
            let (a, ell_max) = if gap {
                let a = rng.random_range(1.05..4.0);
                (a, (a - 1.0) / (2.0 * a))
            } else {
                let a = rng.random_range(0.1..3.0);
                (a, rng.random_range(0.0..0.95))
            };
            let n = rng.random_range(1..=30usize);
            let alphas: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            let worst = rng.random_range(0..n);
            let mus: Vec<f64> = (0..n)
                .map(|k| {
                    let u: f64 = if k == worst {
                        if rng.random::<bool>() {
                            1.0
                        } else {
                            -1.0
                        }
                    } else {
                        rng.random_range(-1.0..=1.0)
                    };
                    k as f64 + ell_max * u
                })
                .collect();
            let ell = mus.iter().enumerate().map(|(k, &m)| (m - k as f64).abs()).fold(0.0, f64::max);
            let norm_sq = exact_perturbation_norm(a, &alphas, &mus).expect("equal lengths");
            let energy: f64 = alphas.iter().map(|z| z.norm_sqr()).sum();
            (
                gap,
                PerturbationTrial {
                    a,
                    ell,
                    n,
                    norm_sq,
                    coeff_energy: energy,
                    rhs_statement: perturbation_bound(a, ell) * energy,
                    rhs_conservative: perturbation_bound_conservative(a, ell) * energy,
                },
            )
        })
        .collect();
    let mut statement_violations = Vec::new();
    let mut conservative_violations = Vec::new();
    let mut worst_statement_ratio = 0.0f64;
    let mut gap_case_trials = 0;
    for (gap, t) in results {
        gap_case_trials += gap as usize;
        if t.rhs_statement > 0.0 {
            worst_statement_ratio = worst_statement_ratio.max(t.norm_sq / t.rhs_statement);
        }
        if t.norm_sq > t.rhs_statement * (1.0 + RELATIVE_SLACK) + 1e-300 {
            statement_violations.push(t.clone());
        }
        if t.norm_sq > t.rhs_conservative * (1.0 + RELATIVE_SLACK) + 1e-300 {
            conservative_violations.push(t);
        }
    }
    let tightest = if statement_violations.is_empty() {
        "statement"
    } else if conservative_violations.is_empty() {
        "conservative"
    } else {
        "none"
    };
    PerturbationReport {
        seed,
        trials,
        gap_case_trials,
        passed: conservative_violations.is_empty(),
        statement_violations,
        conservative_violations,
        worst_statement_ratio,
        tightest_unviolated: tightest.into(),
    }
}

/// Default shift range `|k| ≤ 16` for the operator-norm estimate.
pub const DEFAULT_OPERATOR_SHIFTS: i64 = 16;

/// Randomized lower estimate of
/// `sup ‖Σ α_{n,k} e^{2πibnt}(w(t - ak) - w(t - aμ_{n,k}))‖²` over unit
/// coefficient vectors, for `w = rect^(p)`.
///
/// Each trial draws `μ_{n,k} = k + L_n u` on every jittered row with
/// `|k| ≤ 16` (half the trials with `u` uniform in `[-1, 1]`, half with
/// `u = ±1`), forms the Gram matrix of the difference atoms exactly, and takes
/// its largest eigenvalue. The maximum over trials is returned.
pub fn perturbation_operator_norm_bspline(
    p: i64,
    lat: LatticeParams,
    jit: &JitterProfile,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    if trials == 0 {
        return Err(Error::InvalidInput("trials must be at least 1".into()));
    }
    let window = Arc::new(BSplineWindow::new(p)?);
    if jit.rows().is_empty() {
        return Ok(0.0);
    }
    let values: Vec<Result<f64>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            let signs = t % 2 == 1;
            let mut nominal = Vec::new();
            let mut moved = Vec::new();
            for (&n, &l) in jit.rows() {
                for k in -DEFAULT_OPERATOR_SHIFTS..=DEFAULT_OPERATOR_SHIFTS {
                    let u: f64 = if signs {
                        if rng.random::<bool>() {
                            1.0
                        } else {
                            -1.0
                        }
                    } else {
                        rng.random_range(-1.0..=1.0)
                    };
                    let freq = lat.b * n as f64;
                    nominal.push(AtomSpec::new(freq, lat.a * k as f64, window.clone()));
                    moved.push(AtomSpec::new(freq, lat.a * (k as f64 + l * u), window.clone()));
                }
            }
            let g = difference_gram(&nominal, &moved);
            Ok(gram_spectrum_extrema(&g, DEFAULT_SPECTRUM_TOL)?.max)
        })
        .collect();
    let mut best = 0.0f64;
    for v in values {
        best = best.max(v?);
    }
    Ok(best)
}

/// Gram of `u_j - v_j`: `G_uu - G_uv - G_vu + G_vv`.
fn difference_gram(u: &[AtomSpec], v: &[AtomSpec]) -> GramMatrix {
    let guu = gram_matrix(u).entries;
    let gvv = gram_matrix(v).entries;
    let guv = cross_gram(u, v);
    let gvu = guv.adjoint();
    GramMatrix { entries: guu - &guv - gvu + gvv }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Midpoint sampling of the piecewise-constant function on a fine grid.
    fn sampled_norm(a: f64, alphas: &[Complex64], mus: &[f64]) -> f64 {
        let lo = mus.iter().map(|m| a * m).fold(-0.5, f64::min) - 1.0;
        let hi = mus.iter().map(|m| a * m).fold(a * alphas.len() as f64, f64::max) + 1.0;
        let n = 400_000;
        let h = (hi - lo) / n as f64;
        let rect = |x: f64| if x.abs() < 0.5 { 1.0 } else { 0.0 };
        (0..n)
            .map(|j| {
                let t = lo + (j as f64 + 0.5) * h;
                let v: Complex64 = alphas
                    .iter()
                    .zip(mus)
                    .enumerate()
                    .map(|(k, (al, &mu))| al * (rect(t - a * k as f64) - rect(t - a * mu)))
                    .sum();
                v.norm_sqr() * h
            })
            .sum()
    }

    #[test]
    fn examples() {
        let one = [Complex64::new(1.0, 0.0)];
        assert_eq!(exact_perturbation_norm(1.0, &one, &[0.0]).unwrap(), 0.0);
        let v = exact_perturbation_norm(1.0, &one, &[0.2]).unwrap();
        assert!((v - 0.4).abs() < 1e-15);
        let alphas = vec![Complex64::new(1.0, -1.0); 5];
        let mus: Vec<f64> = (0..5).map(|k| k as f64).collect();
        assert_eq!(exact_perturbation_norm(0.7, &alphas, &mus).unwrap(), 0.0);
        assert!(exact_perturbation_norm(1.0, &one, &[0.0, 1.0]).is_err());
    }

    #[test]
    fn sweep_matches_sampling() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let a = rng.random_range(0.3..2.0);
            let n = rng.random_range(1..6usize);
            let alphas: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
                .collect();
            let mus: Vec<f64> = (0..n).map(|k| k as f64 + rng.random_range(-0.6..0.6)).collect();
            let exact = exact_perturbation_norm(a, &alphas, &mus).unwrap();
            let sampled = sampled_norm(a, &alphas, &mus);
            assert!((exact - sampled).abs() < 1e-4, "{exact} vs {sampled}");
        }
    }

    #[test]
    fn gap_case_has_no_overlap() {
        // a = 2, ℓ = 0.2: the moved edges never overlap, so the norm is exactly
        // Σ |α_k|² · 2a|μ_k - k|
        let alphas: Vec<Complex64> = (0..4).map(|k| Complex64::new(1.0 + k as f64, 0.5)).collect();
        let mus = [0.2, 0.9, 2.15, 2.8];
        let exact = exact_perturbation_norm(2.0, &alphas, &mus).unwrap();
        let expected: f64 = alphas
            .iter()
            .zip(mus.iter().enumerate())
            .map(|(al, (k, m))| al.norm_sqr() * 2.0 * 2.0 * (m - k as f64).abs())
            .sum();
        assert!((exact - expected).abs() < 1e-12);
    }

    #[test]
    fn small_trial_suite_is_deterministic() {
        let r1 = perturbation_trials(64, 9);
        let r2 = perturbation_trials(64, 9);
        assert_eq!(r1, r2);
        assert_eq!(r1.gap_case_trials, 16);
        assert!(r1.passed);
    }

    #[test]
    fn operator_norm_examples() {
        let lat = LatticeParams::new(1.0, 1.0).unwrap();
        assert_eq!(perturbation_operator_norm_bspline(1, lat, &JitterProfile::default(), 3, 1).unwrap(), 0.0);
        let jit = JitterProfile::single_row(0.1).unwrap();
        for p in 1..=2 {
            let v = perturbation_operator_norm_bspline(p, lat, &jit, 8, 2).unwrap();
            assert!(v > 0.0 && v <= 0.4 + 1e-10, "p={p}: {v}");
        }
        assert!(perturbation_operator_norm_bspline(1, lat, &jit, 0, 2).is_err());
    }
}
