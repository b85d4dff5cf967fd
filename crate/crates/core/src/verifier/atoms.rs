use std::f64::consts::PI;
use std::sync::Arc;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::bspline::BSplineWindow;
use crate::poly::integrate_poly_exp;

/// The atom `t ↦ e^{2πi·freq·t} w(t - shift)`.
#[derive(Debug, Clone)]
pub struct AtomSpec {
    pub freq: f64,
    pub shift: f64,
    pub window: Arc<BSplineWindow>,
}

impl AtomSpec {
    pub fn new(freq: f64, shift: f64, window: Arc<BSplineWindow>) -> Self {
        AtomSpec { freq, shift, window }
    }

    pub fn support(&self) -> (f64, f64) {
        let h = self.window.half_support();
        (self.shift - h, self.shift + h)
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        let w = self.window.eval(t - self.shift);
        if w == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        Complex64::from_polar(w, 2.0 * PI * self.freq * t)
    }
}

/// Anything with an exact inner product.
pub trait Atom: Sync {
    fn inner(&self, other: &Self) -> Complex64;
}

impl Atom for AtomSpec {
    fn inner(&self, other: &Self) -> Complex64 {
        gram_entry(self, other)
    }
}

/// A product atom on `R^d`; the inner product factorizes over coordinates.
#[derive(Debug, Clone)]
pub struct TensorAtom {
    pub parts: Vec<AtomSpec>,
}

impl Atom for TensorAtom {
    fn inner(&self, other: &Self) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for (x, y) in self.parts.iter().zip(&other.parts) {
            acc *= gram_entry(x, y);
            if acc == Complex64::new(0.0, 0.0) {
                break;
            }
        }
        acc
    }
}

/// `⟨x, y⟩ = ∫ e^{2πi(f_x - f_y)t} w_x(t - s_x) w_y(t - s_y) dt`, exact up
/// to rounding.
///
/// The overlap of the supports is split at every breakpoint of either window;
/// on each cell both windows are single polynomials, so the integrand is a
/// polynomial times an exponential and is integrated in closed form.
pub fn gram_entry(x: &AtomSpec, y: &AtomSpec) -> Complex64 {
    let (xl, xr) = x.support();
    let (yl, yr) = y.support();
    let lo = xl.max(yl);
    let hi = xr.min(yr);
    if hi <= lo {
        return Complex64::new(0.0, 0.0);
    }
    let mut cuts = Vec::with_capacity(x.window.order() + y.window.order() + 2);
    cuts.push(lo);
    cuts.push(hi);
    for i in 1..x.window.order() {
        let c = xl + i as f64;
        if c > lo && c < hi {
            cuts.push(c);
        }
    }
    for j in 1..y.window.order() {
        let c = yl + j as f64;
        if c > lo && c < hi {
            cuts.push(c);
        }
    }
    cuts.sort_by(|u, v| u.total_cmp(v));
    // ∫ e^{2πiΔt} ... = ∫ ... e^{-iωt} with ω = -2πΔ
    let omega = -2.0 * PI * (x.freq - y.freq);
    let mut acc = Complex64::new(0.0, 0.0);
    for c in cuts.windows(2) {
        let (c0, c1) = (c[0], c[1]);
        if c1 - c0 <= 0.0 {
            continue;
        }
        let mid = 0.5 * (c0 + c1);
        let (Some(i), Some(j)) = (x.window.piece_index(mid - x.shift), y.window.piece_index(mid - y.shift))
        else {
            continue;
        };
        let px = x.window.piece(i).shifted(c0 - x.shift - x.window.piece_left(i));
        let py = y.window.piece(j).shifted(c0 - y.shift - y.window.piece_left(j));
        let local = integrate_poly_exp(&px.mul(&py), omega, 0.0, c1 - c0);
        acc += local * Complex64::from_polar(1.0, -omega * c0);
    }
    acc
}

/// Hermitian matrix of pairwise inner products.
#[derive(Debug, Clone)]
pub struct GramMatrix {
    pub entries: DMatrix<Complex64>,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Principal submatrix on `idx`.
    pub fn select(&self, idx: &[usize]) -> GramMatrix {
        let n = idx.len();
        GramMatrix { entries: DMatrix::from_fn(n, n, |i, j| self.entries[(idx[i], idx[j])]) }
    }

    /// Largest deviation from Hermitian symmetry.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.entries[(i, j)] - self.entries[(j, i)].conj()).norm());
            }
        }
        worst
    }
}

/// Gram matrix of `atoms`, entries computed in parallel. Only the upper
/// triangle is integrated; the lower one is its conjugate.
pub fn gram_matrix<A: Atom>(atoms: &[A]) -> GramMatrix {
    let n = atoms.len();
    let upper: Vec<Vec<Complex64>> =
        (0..n).into_par_iter().map(|i| (i..n).map(|j| atoms[i].inner(&atoms[j])).collect()).collect();
    let mut m = DMatrix::zeros(n, n);
    for (i, row) in upper.into_iter().enumerate() {
        for (off, v) in row.into_iter().enumerate() {
            let j = i + off;
            if i == j {
                m[(i, i)] = Complex64::new(v.re, 0.0);
            } else {
                m[(i, j)] = v;
                m[(j, i)] = v.conj();
            }
        }
    }
    GramMatrix { entries: m }
}

/// `M[i][j] = ⟨left_i, right_j⟩`.
pub fn cross_gram<A: Atom>(left: &[A], right: &[A]) -> DMatrix<Complex64> {
    let rows: Vec<Vec<Complex64>> =
        left.par_iter().map(|x| right.iter().map(|y| x.inner(y)).collect()).collect();
    DMatrix::from_fn(left.len(), right.len(), |i, j| rows[i][j])
}
