use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::atoms::GramMatrix;
use crate::error::{Error, Result};

/// Matrices up to this size are diagonalized densely.
pub const DENSE_LIMIT: usize = 512;
pub const DEFAULT_SPECTRUM_TOL: f64 = 1e-10;
const MAX_ITERATIONS: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumExtrema {
    pub min: f64,
    pub max: f64,
    /// Largest `‖G v - λ v‖` over the two extremal eigenpairs.
    pub residual: f64,
}

/// Smallest and largest eigenvalue of a Hermitian Gram matrix.
///
/// Dense Hermitian eigendecomposition for `N ≤ 512`; beyond that, power
/// iteration for the top of the spectrum and power iteration on the
/// reflected matrix `λ_max I - G` for the bottom.
pub fn gram_spectrum_extrema(g: &GramMatrix, tol: f64) -> Result<SpectrumExtrema> {
    let n = g.dim();
    if n == 0 {
        return Err(Error::InvalidInput("empty Gram matrix".into()));
    }
    if n <= DENSE_LIMIT {
        dense_extrema(&g.entries)
    } else {
        iterative_extrema(&g.entries, tol)
    }
}

fn residual(m: &DMatrix<Complex64>, v: &DVector<Complex64>, lambda: f64) -> f64 {
    let mv = m * v;
    (mv - v * Complex64::new(lambda, 0.0)).norm() / v.norm()
}

fn dense_extrema(m: &DMatrix<Complex64>) -> Result<SpectrumExtrema> {
    let eig = SymmetricEigen::new(m.clone());
    let (mut imin, mut imax) = (0, 0);
    for (i, &l) in eig.eigenvalues.iter().enumerate() {
        if l < eig.eigenvalues[imin] {
            imin = i;
        }
        if l > eig.eigenvalues[imax] {
            imax = i;
        }
    }
    let (lmin, lmax) = (eig.eigenvalues[imin], eig.eigenvalues[imax]);
    let vmin = eig.eigenvectors.column(imin).into_owned();
    let vmax = eig.eigenvectors.column(imax).into_owned();
    Ok(SpectrumExtrema {
        min: lmin,
        max: lmax,
        residual: residual(m, &vmin, lmin).max(residual(m, &vmax, lmax)),
    })
}

/// Power iteration on `shift·I + sign·M`; returns the Rayleigh quotient of `M`
/// and the residual.
fn power(m: &DMatrix<Complex64>, shift: f64, sign: f64, tol: f64) -> Result<(f64, f64)> {
    let n = m.nrows();
    // deterministic start with no special alignment
    let mut v = DVector::from_fn(n, |i, _| {
        Complex64::new(1.0 + ((i * 7919) % 113) as f64 / 113.0, ((i * 104_729) % 97) as f64 / 97.0)
    });
    v /= Complex64::new(v.norm(), 0.0);
    let mut last = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        let mv = m * &v;
        let lambda = v.dotc(&mv).re;
        let r = (&mv - &v * Complex64::new(lambda, 0.0)).norm();
        last = r;
        if r <= tol * lambda.abs().max(1.0) {
            return Ok((lambda, r));
        }
        let mut next = &v * Complex64::new(shift, 0.0) + mv * Complex64::new(sign, 0.0);
        let nn = next.norm();
        if nn == 0.0 {
            return Ok((lambda, r));
        }
        next /= Complex64::new(nn, 0.0);
        v = next;
    }
    Err(Error::NonConvergence { iterations: MAX_ITERATIONS, residual: last })
}

fn iterative_extrema(m: &DMatrix<Complex64>, tol: f64) -> Result<SpectrumExtrema> {
    let (lmax, rmax) = power(m, 0.0, 1.0, tol)?;
    let (lmin, rmin) = power(m, lmax, -1.0, tol)?;
    Ok(SpectrumExtrema { min: lmin, max: lmax, residual: rmax.max(rmin) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(n: usize, f: impl Fn(usize, usize) -> f64) -> GramMatrix {
        GramMatrix { entries: DMatrix::from_fn(n, n, |i, j| Complex64::new(f(i, j), 0.0)) }
    }

    #[test]
    fn examples() {
        let id = real(7, |i, j| if i == j { 1.0 } else { 0.0 });
        let e = gram_spectrum_extrema(&id, 1e-10).unwrap();
        assert!((e.min - 1.0).abs() < 1e-14 && (e.max - 1.0).abs() < 1e-14);

        let g = real(2, |i, j| if i == j { 1.0 } else { 1.0 / 6.0 });
        let e = gram_spectrum_extrema(&g, 1e-10).unwrap();
        assert!((e.min - 5.0 / 6.0).abs() < 1e-14 && (e.max - 7.0 / 6.0).abs() < 1e-14);

        // repeated atom: rank deficient
        let g = real(3, |i, j| if (i < 2) == (j < 2) { 1.0 } else { 0.0 });
        let e = gram_spectrum_extrema(&g, 1e-10).unwrap();
        assert!(e.min.abs() < 1e-12 && (e.max - 2.0).abs() < 1e-12);
    }

    #[test]
    fn iterative_path_matches_dense() {
        // tridiagonal Toeplitz: eigenvalues 1 + 2c cos(kπ/(n+1))
        let n = 60;
        let c = 0.2;
        let g = real(n, |i, j| {
            if i == j {
                1.0
            } else if i.abs_diff(j) == 1 {
                c
            } else {
                0.0
            }
        });
        let d = dense_extrema(&g.entries).unwrap();
        let it = iterative_extrema(&g.entries, 1e-12).unwrap();
        let exact_max = 1.0 + 2.0 * c * (std::f64::consts::PI / (n as f64 + 1.0)).cos();
        assert!((d.max - exact_max).abs() < 1e-12);
        assert!((it.max - d.max).abs() < 1e-9);
        assert!((it.min - d.min).abs() < 1e-9);
    }

    #[test]
    fn large_matrices_use_iteration() {
        let n = DENSE_LIMIT + 8;
        let g = real(n, |i, j| if i == j { 1.0 + (i % 5) as f64 * 0.1 } else { 0.0 });
        let e = gram_spectrum_extrema(&g, 1e-10).unwrap();
        assert!((e.max - 1.4).abs() < 1e-8 && (e.min - 1.0).abs() < 1e-8);
    }
}
