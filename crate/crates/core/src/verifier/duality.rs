//! The Fourier side of a B-spline family.
//!
//! The atom `e^{2πi f t} rect^(p)(t - s)` has Fourier transform
//! `e^{2πi f s} e^{-2πi s ξ} sinc^p(ξ - f)`. The sinc-side family drops the
//! constant phase `e^{2πi f s}`; it is kept here so that Gram matrices can be
//! compared entry by entry (dropping it conjugates the Gram by a diagonal
//! unitary, which leaves the spectrum unchanged).

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::atoms::{gram_matrix, AtomSpec};
use crate::bspline::fourier_sinc;
use crate::quadrature::GaussLegendre;

pub const DEFAULT_HALF_WIDTH: f64 = 64.0;
const NODES_PER_UNIT: usize = 32;
/// Outer radius of the numerically integrated tail for `p = 1`.
const TAIL_RADIUS_P1: f64 = 20_000.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    pub p: u32,
    pub atoms: usize,
    pub half_width: f64,
    /// Radius up to which the integrand was integrated numerically.
    pub integrated_radius: f64,
    /// Analytic bound on `|∫_{|ξ| > R} ...|` per entry.
    pub tail_bound: f64,
    pub max_entry_difference: f64,
    pub passed: bool,
}

/// `∫ sinc^p(ξ - f_x) sinc^p(ξ - f_y) e^{-2πi (s_x - s_y) ξ} dξ · e^{2πi(f_x s_x - f_y s_y)}`
/// by Gauss–Legendre quadrature, 32 nodes per unit, on `|ξ| ≤ R`.
pub fn sinc_side_entry(x: &AtomSpec, y: &AtomSpec, radius: f64) -> Complex64 {
    let p = x.window.order() as u32;
    let q = y.window.order() as u32;
    let gl = GaussLegendre::new(NODES_PER_UNIT);
    let ds = x.shift - y.shift;
    let panels = (2.0 * radius).ceil() as usize;
    let h = 2.0 * radius / panels as f64;
    let sum: Complex64 = (0..panels)
        .into_par_iter()
        .map(|k| {
            let lo = -radius + k as f64 * h;
            let half = 0.5 * h;
            let mid = lo + half;
            gl.nodes
                .iter()
                .zip(&gl.weights)
                .map(|(&u, &w)| {
                    let xi = mid + half * u;
                    let amp = fourier_sinc(p, xi - x.freq) * fourier_sinc(q, xi - y.freq);
                    Complex64::from_polar(w * half * amp, -2.0 * PI * ds * xi)
                })
                .sum::<Complex64>()
        })
        .sum();
    sum * Complex64::from_polar(1.0, 2.0 * PI * (x.freq * x.shift - y.freq * y.shift))
}

/// Bound on the part of a sinc-side entry beyond `|ξ| > R` for atoms with
/// `|freq| ≤ fmax`: `|sinc(u)| ≤ 1/(π|u|)`, so the tail is at most
/// `2 ∫_{R - fmax}^∞ (πu)^{-2p} du`.
pub fn sinc_tail_bound(p: u32, radius: f64, fmax: f64) -> f64 {
    let r = radius - fmax;
    let s = 2.0 * p as f64;
    2.0 * r.powf(1.0 - s) / ((s - 1.0) * PI.powf(s))
}

/// Compares the sinc-side Gram (quadrature) with the rect-side Gram (closed
/// form) for one family of equal-order atoms.
pub fn check_plancherel(atoms: &[AtomSpec], half_width: f64, tol: f64) -> DualityReport {
    let p = atoms.first().map(|a| a.window.order() as u32).unwrap_or(1);
    let fmax = atoms.iter().map(|a| a.freq.abs()).fold(0.0, f64::max);
    // for p = 1 the tail beyond the stated half-width is still ~1e-3, so
    // the integration runs further out and the bound applies to what remains
    let radius = if p == 1 { half_width.max(TAIL_RADIUS_P1) } else { half_width };
    let exact = gram_matrix(atoms).entries;
    let n = atoms.len();
    let mut diff = 0.0f64;
    let dual = DMatrix::from_fn(n, n, |i, j| sinc_side_entry(&atoms[i], &atoms[j], radius));
    for i in 0..n {
        for j in 0..n {
            diff = diff.max((dual[(i, j)] - exact[(i, j)]).norm());
        }
    }
    let tail = sinc_tail_bound(p, radius, fmax);
    DualityReport {
        p,
        atoms: n,
        half_width,
        integrated_radius: radius,
        tail_bound: tail,
        max_entry_difference: diff,
        passed: diff <= tol,
    }
}
