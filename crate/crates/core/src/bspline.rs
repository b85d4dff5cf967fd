//! Cardinal B-spline windows `rect^(p)`: the p-fold self-convolution of the
//! unit rectangle `χ_[-1/2, 1/2]`.
//!
//! A window of order `p` is stored as `p` polynomial pieces of degree `p - 1`.
//! Piece `i` (0-based) lives on `[-p/2 + i, -p/2 + i + 1]` and is expressed in
//! the local variable `u = x - (-p/2 + i) ∈ [0, 1]`, which keeps evaluation
//! well conditioned for large orders. The coefficients are generated once
//! from the truncated-power expansion using exact integer arithmetic.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{integrate_poly_exp, Poly};
use crate::quadrature::GaussLegendre;

/// Default node count for [`eval_by_recursion`].
pub const DEFAULT_RECURSION_NODES: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct BSplineWindow {
    order: usize,
    pieces: Vec<Poly>,
}

/// Builds `rect^(p)`.
pub fn build_window(p: i64) -> Result<BSplineWindow> {
    BSplineWindow::new(p)
}

impl BSplineWindow {
    pub fn new(p: i64) -> Result<Self> {
        if p < 1 {
            return Err(Error::InvalidOrder(p));
        }
        let order = p as usize;
        let pieces = (0..order).map(|i| piece_coefficients(order, i)).collect();
        Ok(BSplineWindow { order, pieces })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `p / 2`; the support is `[-p/2, p/2]`.
    pub fn half_support(&self) -> f64 {
        self.order as f64 / 2.0
    }

    /// Left end of piece `i`.
    pub fn piece_left(&self, i: usize) -> f64 {
        -self.half_support() + i as f64
    }

    pub fn piece(&self, i: usize) -> &Poly {
        &self.pieces[i]
    }

    pub fn pieces(&self) -> &[Poly] {
        &self.pieces
    }

    /// Index of the piece containing `x`, using `[lo, hi)` cells with the last
    /// cell closed. `None` outside the support.
    pub fn piece_index(&self, x: f64) -> Option<usize> {
        let h = self.half_support();
        if !(x >= -h && x <= h) {
            return None;
        }
        let i = (x + h).floor() as usize;
        Some(i.min(self.order - 1))
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self.piece_index(x) {
            Some(i) => self.pieces[i].eval(x - self.piece_left(i)),
            None => 0.0,
        }
    }

    /// Right limit `rect^(p)(x+)`: plain `[lo, hi)` cells, so the value at the
    /// right support end is 0. Differs from [`eval`](Self::eval) only there.
    pub fn eval_right(&self, x: f64) -> f64 {
        let h = self.half_support();
        if !(x >= -h && x < h) {
            return 0.0;
        }
        let i = ((x + h).floor() as usize).min(self.order - 1);
        self.pieces[i].eval(x - self.piece_left(i))
    }

    /// `∫_lo^hi rect^(p)(t) e^{-i omega t} dt`, exact up to rounding.
    pub fn oscillatory_integral(&self, omega: f64, lo: f64, hi: f64) -> Complex64 {
        if hi < lo {
            return -self.oscillatory_integral(omega, hi, lo);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, piece) in self.pieces.iter().enumerate() {
            let left = self.piece_left(i);
            let c0 = lo.max(left);
            let c1 = hi.min(left + 1.0);
            if c1 <= c0 {
                continue;
            }
            let local = integrate_poly_exp(piece, omega, c0 - left, c1 - left);
            acc += local * Complex64::new((omega * left).cos(), -(omega * left).sin());
        }
        acc
    }
}

/// Coefficients of piece `i` of `rect^(p)` in `u = x + p/2 - i`:
/// `1/(p-1)! Σ_{j<=i} (-1)^j C(p,j) (i - j + u)^{p-1}`, expanded binomially.
fn piece_coefficients(p: usize, i: usize) -> Poly {
    let deg = p - 1;
    let binom_p = binomial_row(p);
    let mut coeffs = Vec::with_capacity(p);
    for m in 0..=deg {
        // N = Σ_j (-1)^j C(p,j) (i-j)^{deg-m}
        let mut num = BigInt::zero();
        for (j, c) in binom_p.iter().enumerate().take(i + 1) {
            let base = BigInt::from((i - j) as u64);
            let term = c * num_traits::pow(base, deg - m);
            if j % 2 == 0 {
                num += term;
            } else {
                num -= term;
            }
        }
        // coefficient = C(deg, m) N / deg! = N / (m! (deg-m)!)
        let denom = factorial(m) * factorial(deg - m);
        coeffs.push(big_ratio_to_f64(&num, &denom));
    }
    Poly(coeffs)
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for k in 1..=n {
        let prev = row[k - 1].clone();
        row.push(prev * BigInt::from(n - k + 1) / BigInt::from(k));
    }
    row
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

fn big_ratio_to_f64(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    // scale so the quotient keeps 64 significant bits before the final rounding
    let shift = 64i64 + den.bits() as i64 - num.bits() as i64;
    let q = if shift >= 0 { (num << shift as usize) / den } else { (num >> (-shift) as usize) / den };
    q.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-shift as i32)
}

/// `sinc(x) = sin(πx)/(πx)` with `sinc(0) = 1`.
pub fn sinc(x: f64) -> f64 {
    let px = std::f64::consts::PI * x;
    if px.abs() < 1e-5 {
        // series, relative error below 1e-20 in this range
        let s = px * px;
        1.0 - s / 6.0 + s * s / 120.0
    } else {
        px.sin() / px
    }
}

/// `sinc(xi)^p`, the Fourier transform `∫ rect^(p)(t) e^{-2πi xi t} dt`.
pub fn fourier_sinc(p: u32, xi: f64) -> f64 {
    sinc(xi).powi(p as i32)
}

/// Evaluates `rect^(p)(x)` directly from the convolution identity
/// `rect^(p)(x) = ∫_{x-1/2}^{x+1/2} rect^(p-1)(t) dt`, recursively, with
/// Gauss–Legendre quadrature on each polynomial cell of the integrand.
///
/// This does not use the piecewise representation of [`BSplineWindow`] and
/// serves as an independent check of it. `quad_points` caps the node count per
/// cell; a cell integrand of degree `d` never gets more than the
/// `ceil((d + 1) / 2)` nodes that already integrate it exactly.
pub fn eval_by_recursion(p: i64, x: f64, quad_points: usize) -> Result<f64> {
    if p < 1 {
        return Err(Error::InvalidOrder(p));
    }
    if quad_points == 0 {
        return Err(Error::InvalidInput("quad_points must be positive".into()));
    }
    let p = p as usize;
    let rules: Vec<GaussLegendre> = (0..=p)
        .map(|level| {
            // level k integrates rect^(k-1), degree k-2
            let exact = level.saturating_sub(1).div_ceil(2).max(1);
            GaussLegendre::new(exact.min(quad_points))
        })
        .collect();
    Ok(recurse(p, x, &rules))
}

fn recurse(p: usize, x: f64, rules: &[GaussLegendre]) -> f64 {
    if p == 1 {
        return if x.abs() <= 0.5 { 1.0 } else { 0.0 };
    }
    let h = (p - 1) as f64 / 2.0;
    let lo = (x - 0.5).max(-h);
    let hi = (x + 0.5).min(h);
    if hi <= lo {
        return 0.0;
    }
    // split at the breakpoints -h + j of rect^(p-1)
    let mut cuts = vec![lo];
    let first = (lo + h).floor() as i64 + 1;
    let mut j = first;
    loop {
        let b = -h + j as f64;
        if b >= hi {
            break;
        }
        if b > lo {
            cuts.push(b);
        }
        j += 1;
    }
    cuts.push(hi);
    let rule = &rules[p];
    cuts.windows(2).map(|w| rule.integrate(w[0], w[1], |t| recurse(p - 1, t, rules))).sum()
}
