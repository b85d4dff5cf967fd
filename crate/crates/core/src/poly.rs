//! Dense real polynomials in a local variable, and closed-form integrals of
//! polynomial-times-exponential integrands.

use num_complex::Complex64;

/// Coefficients in ascending powers: `c[0] + c[1] u + c[2] u^2 + ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly(pub Vec<f64>);

impl Poly {
    pub fn zero() -> Self {
        Poly(vec![0.0])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn eval(&self, u: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * u + c)
    }

    pub fn derivative(&self) -> Poly {
        if self.0.len() <= 1 {
            return Poly::zero();
        }
        Poly(self.0.iter().enumerate().skip(1).map(|(m, &c)| m as f64 * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![0.0; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out)
    }

    pub fn add_assign(&mut self, other: &Poly) {
        if other.0.len() > self.0.len() {
            self.0.resize(other.0.len(), 0.0);
        }
        for (a, &b) in self.0.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
    }

    /// Returns `q(v) = p(v + c)`.
    pub fn shifted(&self, c: f64) -> Poly {
        if c == 0.0 {
            return self.clone();
        }
        // repeated synthetic division (Horner's scheme for Taylor shifts)
        let mut a = self.0.clone();
        let n = a.len();
        for k in 0..n {
            for j in (k..n - 1).rev() {
                a[j] += c * a[j + 1];
            }
        }
        Poly(a)
    }
}

/// `K_m(x) = ∫_0^1 s^m e^{-i x s} ds` for `m = 0..=max_m`.
///
/// Orders with `m + 1 >= |x|` come from the tail series
/// `e^{-ix} Σ_r (ix)^r m!/(m+1+r)!`, whose terms decrease monotonically there;
/// lower orders use the upward integration-by-parts recurrence, which is
/// stable for `m <= |x|`.
pub fn unit_exp_moments(x: f64, max_m: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); max_m + 1];
    if x == 0.0 {
        for (m, k) in out.iter_mut().enumerate() {
            *k = Complex64::new(1.0 / (m as f64 + 1.0), 0.0);
        }
        return out;
    }
    let ax = x.abs();
    let phase = Complex64::new(x.cos(), -x.sin());
    let ix = Complex64::new(0.0, x);

    // upward part: m < |x| - 1
    let upward_top = if ax > 1.0 { ((ax - 1.0).floor() as usize).min(max_m + 1) } else { 0 };
    if upward_top > 0 {
        let i_over_x = Complex64::new(0.0, 1.0 / x);
        out[0] = (Complex64::new(1.0, 0.0) - phase) / ix;
        for m in 1..upward_top {
            out[m] = i_over_x * phase - i_over_x * (m as f64) * out[m - 1];
        }
    }
    for (m, o) in out.iter_mut().enumerate().skip(upward_top) {
        *o = phase * tail_series(ix, m);
    }
    out
}

fn tail_series(ix: Complex64, m: usize) -> Complex64 {
    // Σ_r (ix)^r m!/(m+1+r)!
    let mut term = Complex64::new(1.0 / (m as f64 + 1.0), 0.0);
    let mut sum = term;
    for r in 1..2000 {
        term = term * ix / (m as f64 + 1.0 + r as f64);
        sum += term;
        if term.norm() <= 1e-18 * sum.norm() {
            break;
        }
    }
    sum
}

/// `∫_{u0}^{u1} p(u) e^{-i omega u} du` in closed form.
pub fn integrate_poly_exp(p: &Poly, omega: f64, u0: f64, u1: f64) -> Complex64 {
    if u1 == u0 {
        return Complex64::new(0.0, 0.0);
    }
    if u1 < u0 {
        return -integrate_poly_exp(p, omega, u1, u0);
    }
    let h = u1 - u0;
    let q = p.shifted(u0);
    let moments = unit_exp_moments(omega * h, q.degree());
    let mut acc = Complex64::new(0.0, 0.0);
    let mut hp = h;
    for (c, k) in q.coeffs().iter().zip(moments.iter()) {
        acc += k * (c * hp);
        hp *= h;
    }
    if u0 == 0.0 {
        acc
    } else {
        acc * Complex64::new((omega * u0).cos(), -(omega * u0).sin())
    }
}
