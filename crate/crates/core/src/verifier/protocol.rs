//! Finite-section verification of certificates.
//!
//! A certificate speaks about an infinite family; only finite pieces of it can
//! be tested. For Riesz certificates every finite subfamily inherits both
//! bounds, so sampled subfamily Gram spectra must lie in `[A, B]`. For
//! frame-only certificates subfamilies inherit only the upper bound; the lower
//! bound is tested with signals supported well inside the sampled index
//! range, where `Σ_j |⟨f, g_j⟩|² ≥ A ‖f‖²` must hold with the truncated sum.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::atoms::{cross_gram, gram_matrix, AtomSpec, GramMatrix, TensorAtom};
use super::spectrum::{gram_spectrum_extrema, DEFAULT_SPECTRUM_TOL};
use crate::bspline::BSplineWindow;
use crate::error::{Error, Result};
use crate::stability::{Certificate, CertifiedSystem};

/// Order of the smooth test windows; their spectra decay like `|ξ|^{-8}` in
/// energy, so frequency truncation of the family costs nothing measurable.
const TEST_ORDER: i64 = 4;
/// Spectral distance kept between test atoms and the edge of the sampled
/// frequency range.
const TEST_FREQ_MARGIN: f64 = 2.0;
const MAX_TEST_ATOMS: usize = 256;
/// Test-Gram eigenvalues below this fraction of the largest are projected out.
const TEST_RANK_CUTOFF: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Frequency indices `|n| ≤ n_freq`.
    pub n_freq: i64,
    /// Shift indices `|k| ≤ n_shift`.
    pub n_shift: i64,
    /// Independent jitter realizations.
    pub realizations: usize,
    /// Random subfamilies per realization, in addition to one contiguous block.
    pub subfamilies: usize,
    pub max_atoms: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n_freq: 8,
            n_shift: 16,
            realizations: 2,
            subfamilies: 4,
            max_atoms: 289,
            tol: 1e-6,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubfamilyCheck {
    pub realization: usize,
    pub label: String,
    pub atoms: usize,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    pub residual: f64,
    pub hermitian_defect: f64,
    pub lower_ok: Option<bool>,
    pub upper_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestSignalCheck {
    pub realization: usize,
    /// Dimension of the test-signal space after removing its numerical kernel.
    pub test_dimension: usize,
    /// `min ‖analysis(f)‖² / ‖f‖²` over the test space.
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub lower_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub tol: f64,
    pub options: VerifyOptions,
    /// `"riesz_subfamilies"` or `"frame_test_signals"`.
    pub mode: String,
    pub claimed_lower: f64,
    pub claimed_upper: f64,
    pub family_atoms: usize,
    pub effective_n_freq: Vec<i64>,
    pub effective_n_shift: Vec<i64>,
    pub subfamily_checks: Vec<SubfamilyCheck>,
    pub test_signal_checks: Vec<TestSignalCheck>,
    pub observed_lower: f64,
    pub observed_upper: f64,
    pub lower_margin: f64,
    pub upper_margin: f64,
    pub falsifications: Vec<String>,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// One coordinate of a sampled system.
#[derive(Debug, Clone)]
pub struct DimSample {
    pub atoms: Vec<AtomSpec>,
    /// `(n, k)` of each atom.
    pub index: Vec<(i64, i64)>,
    pub test: Vec<AtomSpec>,
    pub n_freq: i64,
    pub n_shift: i64,
}

/// Parameters of one coordinate: `{e^{2πi bλ_n t} rect^(p)(t - aμ_{n,k})}`.
#[derive(Debug, Clone)]
pub struct DimSpec {
    pub p: i64,
    pub a: f64,
    pub b: f64,
    pub rows: BTreeMap<i64, f64>,
    pub ell: f64,
}

/// Draws one realization of the jittered coordinate family.
///
/// `λ_n = n + ℓ u_n`, `μ_{n,k} = k + L_n u_{n,k}` with `u` uniform on
/// `[-1, 1]`, or `u = ±1` when `extreme` is set. The index ranges are
/// enlarged when needed so that test atoms fit inside with margins.
pub fn sample_dim(
    spec: &DimSpec,
    n_freq: i64,
    n_shift: i64,
    extreme: bool,
    test_cap: usize,
    rng: &mut ChaCha8Rng,
) -> Result<DimSample> {
    let window = Arc::new(BSplineWindow::new(spec.p)?);
    let test_window = Arc::new(BSplineWindow::new(TEST_ORDER)?);
    let l_max = spec.rows.values().copied().fold(0.0, f64::max);
    let half_test = test_window.half_support();
    let n_freq = n_freq.max(((TEST_FREQ_MARGIN + 1.0) / spec.b + spec.ell).ceil() as i64);
    let n_shift = n_shift.max(((spec.p as f64 / 2.0 + half_test + 1.0) / spec.a + 1.0 + l_max).ceil() as i64);
    let mut freqs: BTreeSet<i64> = (-n_freq..=n_freq).collect();
    freqs.extend(spec.rows.keys().copied());
    let draw = |rng: &mut ChaCha8Rng| -> f64 {
        if extreme {
            if rng.random::<bool>() {
                1.0
            } else {
                -1.0
            }
        } else {
            rng.random_range(-1.0..=1.0)
        }
    };
    let mut atoms = Vec::new();
    let mut index = Vec::new();
    for &n in &freqs {
        let lambda = n as f64 + spec.ell * draw(rng);
        let l_n = spec.rows.get(&n).copied().unwrap_or(0.0);
        for k in -n_shift..=n_shift {
            let mu = k as f64 + l_n * draw(rng);
            atoms.push(AtomSpec::new(spec.b * lambda, spec.a * mu, window.clone()));
            index.push((n, k));
        }
    }
    // test atoms: inside the time range no excluded atom can reach, and
    // TEST_FREQ_MARGIN below the highest sampled frequency
    let time_cover = spec.a * (n_shift as f64 + 1.0 - l_max) - spec.p as f64 / 2.0;
    let freq_cover = spec.b * (n_freq as f64 - spec.ell) - TEST_FREQ_MARGIN;
    let mut s_max = (time_cover - half_test).floor().max(0.0) as i64;
    let mut f_max = freq_cover.floor().max(0.0) as i64;
    while ((2 * s_max + 1) * (2 * f_max + 1)) as usize > test_cap {
        if s_max >= f_max && s_max > 0 {
            s_max -= 1;
        } else if f_max > 0 {
            f_max -= 1;
        } else {
            break;
        }
    }
    let test = (-f_max..=f_max)
        .flat_map(|m| {
            let w = test_window.clone();
            (-s_max..=s_max).map(move |s| AtomSpec::new(m as f64, s as f64, w.clone()))
        })
        .collect();
    Ok(DimSample { atoms, index, test, n_freq, n_shift })
}

fn dims_of(cert: &Certificate) -> Result<(Vec<DimSpec>, Option<String>)> {
    match &cert.system {
        CertifiedSystem::Bspline { p, lattice, jitter, sinc_side } => Ok((
            vec![DimSpec {
                p: *p,
                a: lattice.a,
                b: lattice.b,
                rows: jitter.rows().clone(),
                ell: jitter.ell(),
            }],
            sinc_side
                .then(|| "sinc-side family verified through its rect-side preimage (Plancherel)".to_string()),
        )),
        CertifiedSystem::Tensor { dims } => Ok((
            dims.iter()
                .map(|d| DimSpec {
                    p: 1,
                    a: d.a,
                    b: d.b,
                    rows: if d.l > 0.0 { BTreeMap::from([(0, d.l)]) } else { BTreeMap::new() },
                    ell: 0.0,
                })
                .collect(),
            None,
        )),
        CertifiedSystem::Sobolev { .. } => Err(Error::Unsupported(
            "Sobolev-window certificates carry no exact window representation to verify against".into(),
        )),
        CertifiedSystem::Abstract => {
            Err(Error::Unsupported("certificate does not describe a concrete system".into()))
        }
    }
}

/// Kronecker-style product of per-coordinate matrices indexed by tuples.
fn product_matrix(
    factors: &[DMatrix<Complex64>],
    rows: &[Vec<usize>],
    cols: &[Vec<usize>],
) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows.len(), cols.len(), |i, j| {
        let mut acc = Complex64::new(1.0, 0.0);
        for (d, f) in factors.iter().enumerate() {
            acc *= f[(rows[i][d], cols[j][d])];
        }
        acc
    })
}

fn all_tuples(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &s in sizes {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..s).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// `min` and `max` of `f^* F f / f^* T f` over the range of `T`.
fn generalized_extrema(f: &DMatrix<Complex64>, t: &DMatrix<Complex64>) -> (usize, f64, f64) {
    let eig = SymmetricEigen::new(t.clone());
    let top = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
    let keep: Vec<usize> =
        (0..eig.eigenvalues.len()).filter(|&i| eig.eigenvalues[i] > TEST_RANK_CUTOFF * top).collect();
    let n = t.nrows();
    let w = DMatrix::from_fn(n, keep.len(), |r, c| {
        eig.eigenvectors[(r, keep[c])] / Complex64::new(eig.eigenvalues[keep[c]].sqrt(), 0.0)
    });
    let h = w.adjoint() * f * &w;
    let h = (&h + h.adjoint()) * Complex64::new(0.5, 0.0);
    let e = SymmetricEigen::new(h);
    let lo = e.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = e.eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (keep.len(), lo, hi)
}

/// Tests a certificate's absolute bounds on finite sections of its system.
pub fn verify_certificate(cert: &Certificate, opts: &VerifyOptions) -> Result<VerificationReport> {
    if !cert.satisfied {
        return Err(Error::Unsatisfied);
    }
    if opts.realizations == 0 {
        return Err(Error::InvalidInput("at least one realization is required".into()));
    }
    if opts.max_atoms == 0 || opts.n_freq < 0 || opts.n_shift < 0 || !(opts.tol >= 0.0) {
        return Err(Error::InvalidInput("invalid verification options".into()));
    }
    let bounds = cert
        .absolute_bounds
        .ok_or_else(|| Error::InvalidInput("satisfied certificate without bounds".into()))?;
    let (dims, note) = dims_of(cert)?;
    let d = dims.len();
    let riesz = cert.riesz;
    let test_cap = (MAX_TEST_ATOMS as f64).powf(1.0 / d as f64).floor().max(1.0) as usize;
    let per_dim_budget = (opts.max_atoms as f64).powf(1.0 / d as f64).floor().max(1.0) as usize;

    let mut subfamily_checks = Vec::new();
    let mut test_signal_checks = Vec::new();
    let mut falsifications = Vec::new();
    let mut family_atoms = 0;
    let mut eff_f = vec![0; d];
    let mut eff_k = vec![0; d];

    for r in 0..opts.realizations {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(r as u64);
        let extreme = r % 2 == 1;
        let samples: Vec<DimSample> = dims
            .iter()
            .map(|s| sample_dim(s, opts.n_freq, opts.n_shift, extreme, test_cap, &mut rng))
            .collect::<Result<_>>()?;
        for (j, s) in samples.iter().enumerate() {
            eff_f[j] = s.n_freq;
            eff_k[j] = s.n_shift;
        }
        let sizes: Vec<usize> = samples.iter().map(|s| s.atoms.len()).collect();
        family_atoms = sizes.iter().product();

        // contiguous block around the origin, then random subfamilies
        let mut families: Vec<(String, Vec<Vec<usize>>)> = Vec::new();
        let half = (((per_dim_budget as f64).sqrt() - 1.0) / 2.0).floor().max(0.0) as i64;
        let block: Vec<Vec<usize>> = {
            let per_dim: Vec<Vec<usize>> = samples
                .iter()
                .map(|s| {
                    (0..s.index.len())
                        .filter(|&i| s.index[i].0.abs() <= half && s.index[i].1.abs() <= half)
                        .collect()
                })
                .collect();
            all_tuples(&per_dim.iter().map(Vec::len).collect::<Vec<_>>())
                .into_iter()
                .map(|t| t.iter().enumerate().map(|(j, &i)| per_dim[j][i]).collect())
                .collect()
        };
        families.push((format!("block |n|,|k| <= {half}"), block));
        for s in 0..opts.subfamilies {
            let size = opts.max_atoms.min(family_atoms);
            let picks = sample(&mut rng, family_atoms, size);
            let mut tuples: Vec<Vec<usize>> = picks
                .into_iter()
                .map(|mut flat| {
                    let mut t = vec![0; d];
                    for j in (0..d).rev() {
                        t[j] = flat % sizes[j];
                        flat /= sizes[j];
                    }
                    t
                })
                .collect();
            tuples.sort();
            families.push((format!("random subfamily {s}"), tuples));
        }

        for (label, tuples) in families {
            if tuples.is_empty() {
                continue;
            }
            let atoms: Vec<TensorAtom> = tuples
                .iter()
                .map(|t| TensorAtom {
                    parts: t.iter().enumerate().map(|(j, &i)| samples[j].atoms[i].clone()).collect(),
                })
                .collect();
            let g: GramMatrix = gram_matrix(&atoms);
            let defect = g.hermitian_defect();
            let ext = gram_spectrum_extrema(&g, DEFAULT_SPECTRUM_TOL)?;
            let upper_ok = ext.max <= bounds.upper + opts.tol;
            let lower_ok = riesz.then_some(ext.min >= bounds.lower - opts.tol);
            if !upper_ok {
                falsifications.push(format!(
                    "realization {r}, {label} ({} atoms): largest eigenvalue {:.12e} exceeds B = {:.12e}",
                    atoms.len(),
                    ext.max,
                    bounds.upper
                ));
            }
            if lower_ok == Some(false) {
                falsifications.push(format!(
                    "realization {r}, {label} ({} atoms): smallest eigenvalue {:.12e} is below A = {:.12e}",
                    atoms.len(),
                    ext.min,
                    bounds.lower
                ));
            }
            subfamily_checks.push(SubfamilyCheck {
                realization: r,
                label,
                atoms: atoms.len(),
                min_eigenvalue: ext.min,
                max_eigenvalue: ext.max,
                residual: ext.residual,
                hermitian_defect: defect,
                lower_ok,
                upper_ok,
            });
        }

        if !riesz {
            let mut f_factors = Vec::with_capacity(d);
            let mut t_factors = Vec::with_capacity(d);
            for s in &samples {
                let c = cross_gram(&s.test, &s.atoms);
                f_factors.push(&c * c.adjoint());
                t_factors.push(gram_matrix(&s.test).entries);
            }
            let tuples = all_tuples(&samples.iter().map(|s| s.test.len()).collect::<Vec<_>>());
            let f = product_matrix(&f_factors, &tuples, &tuples);
            let t = product_matrix(&t_factors, &tuples, &tuples);
            let (dim, lo, hi) = generalized_extrema(&f, &t);
            let lower_ok = lo >= bounds.lower - opts.tol;
            if !lower_ok {
                falsifications.push(format!(
                    "realization {r}: a test signal has ‖analysis f‖²/‖f‖² = {lo:.12e} below A = {:.12e}",
                    bounds.lower
                ));
            }
            test_signal_checks.push(TestSignalCheck {
                realization: r,
                test_dimension: dim,
                min_ratio: lo,
                max_ratio: hi,
                lower_ok,
            });
        }
    }

    let observed_upper = subfamily_checks.iter().map(|c| c.max_eigenvalue).fold(f64::NEG_INFINITY, f64::max);
    let observed_lower = if riesz {
        subfamily_checks.iter().map(|c| c.min_eigenvalue).fold(f64::INFINITY, f64::min)
    } else {
        test_signal_checks.iter().map(|c| c.min_ratio).fold(f64::INFINITY, f64::min)
    };
    Ok(VerificationReport {
        seed: opts.seed,
        tol: opts.tol,
        options: opts.clone(),
        mode: if riesz { "riesz_subfamilies" } else { "frame_test_signals" }.into(),
        claimed_lower: bounds.lower,
        claimed_upper: bounds.upper,
        family_atoms,
        effective_n_freq: eff_f,
        effective_n_shift: eff_k,
        subfamily_checks,
        test_signal_checks,
        observed_lower,
        observed_upper,
        lower_margin: observed_lower - bounds.lower,
        upper_margin: bounds.upper - observed_upper,
        passed: falsifications.is_empty(),
        falsifications,
        note,
    })
}
