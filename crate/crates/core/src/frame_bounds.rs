//! Frame bounds of unperturbed Gabor systems `G(g, a, b)`.
//!
//! Everything here is driven by the periodization
//! `S(a, x) = Σ_n |g(x - a n)|²`: for a compactly supported window the optimal
//! bounds are `inf S / b` and `sup S / b` over one period.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bspline::BSplineWindow;
use crate::error::{Error, Result};
use crate::poly::{integrate_poly_exp, Poly};
use crate::window::Window;

/// Tolerance for `a·b ≤ 1` and for snapping `p/a` to an integer.
pub const LATTICE_EPS: f64 = 1e-12;

pub const DEFAULT_GRID_PER_UNIT: usize = 2048;
pub const DEFAULT_KREIN_FAVARD_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticeParams {
    /// time step
    pub a: f64,
    /// frequency step
    pub b: f64,
}

impl LatticeParams {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && a > 0.0 && b.is_finite() && b > 0.0) {
            return Err(Error::ParameterRange(format!(
                "lattice steps must be positive and finite (a = {a}, b = {b})"
            )));
        }
        if a * b > 1.0 + LATTICE_EPS {
            return Err(Error::ParameterRange(format!("a·b = {} exceeds 1; no Gabor frame exists", a * b)));
        }
        Ok(LatticeParams { a, b })
    }

    pub fn density(&self) -> f64 {
        self.a * self.b
    }

    /// `a·b = 1` within [`LATTICE_EPS`].
    pub fn is_critical(&self) -> bool {
        (self.a * self.b - 1.0).abs() <= LATTICE_EPS
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    CertifiedLowerUpper,
    Exact,
    NumericalEstimate,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrameBounds {
    pub lower: f64,
    pub upper: f64,
    pub kind: BoundKind,
}

impl FrameBounds {
    pub fn new(lower: f64, upper: f64, kind: BoundKind) -> Result<Self> {
        if !(lower > 0.0 && lower <= upper && upper.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "frame bounds must satisfy 0 < A <= B (A = {lower}, B = {upper})"
            )));
        }
        Ok(FrameBounds { lower, upper, kind })
    }

    pub fn scaled(&self, lower_factor: f64, upper_factor: f64) -> FrameBounds {
        FrameBounds { lower: self.lower * lower_factor, upper: self.upper * upper_factor, kind: self.kind }
    }
}

/// `floor(x)`, except that values within [`LATTICE_EPS`] of an integer snap to it.
pub fn snap_floor(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= LATTICE_EPS {
        r
    } else {
        x.floor()
    }
}

/// `ceil(x)` with the same snapping as [`snap_floor`].
pub fn snap_ceil(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= LATTICE_EPS {
        r
    } else {
        x.ceil()
    }
}

/// `S(a, x) = Σ_n |g(x - a n)|²` over the finitely many `n` with `x - a n`
/// inside the support.
pub fn periodization(window: &dyn Window, a: f64, x: f64) -> f64 {
    let h = window.half_support();
    let n_lo = ((x - h) / a).ceil() as i64 - 1;
    let n_hi = ((x + h) / a).floor() as i64 + 1;
    (n_lo..=n_hi)
        .map(|n| {
            let v = window.value(x - a * n as f64);
            v * v
        })
        .sum()
}

/// `S(a, x+)`. Grid scans use this so that isolated point values of a
/// discontinuous window (which do not affect frame bounds) are ignored.
pub fn periodization_right(window: &dyn Window, a: f64, x: f64) -> f64 {
    let h = window.half_support();
    let n_lo = ((x - h) / a).ceil() as i64 - 1;
    let n_hi = ((x + h) / a).floor() as i64 + 1;
    (n_lo..=n_hi)
        .map(|n| {
            let v = window.value_right(x - a * n as f64);
            v * v
        })
        .sum()
}

/// Frame bounds of `G(rect^(p), a, b)` from `(rect^(p)(a/2))² ≤ b·A` and
/// `b·B ≤ ceil(p/a)`.
///
/// `ceil(p/a)` is the largest number of supports `[an - p/2, an + p/2]` that
/// can overlap on a set of positive measure. `floor(p/a)` is too small when
/// `p/a` is not an integer: for `p = 1, a = 0.8` the periodization reaches 2
/// on `(0.3, 0.5)` and its translates.
pub fn periodization_bounds(p: i64, lat: LatticeParams) -> Result<FrameBounds> {
    check_bspline_range(p, lat.a)?;
    let w = BSplineWindow::new(p)?;
    let r = w.eval(lat.a / 2.0);
    let lower = r * r / lat.b;
    let upper = snap_ceil(p as f64 / lat.a) / lat.b;
    FrameBounds::new(lower, upper, BoundKind::CertifiedLowerUpper)
}

/// `0 < a ≤ 1` for the rectangle, `0 < a < p` for `p ≥ 2`.
pub(crate) fn check_bspline_range(p: i64, a: f64) -> Result<()> {
    if p < 1 {
        return Err(Error::InvalidOrder(p));
    }
    if p == 1 {
        if a > 1.0 {
            return Err(Error::NotComplete { a });
        }
    } else if a >= p as f64 {
        return Err(Error::ParameterRange(format!("time step a = {a} must be below the order p = {p}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeriodizationExtrema {
    pub inf: f64,
    pub sup: f64,
    pub argmin: f64,
    pub argmax: f64,
}

/// Infimum and supremum of `S(a, ·)` over `[-a/2, a/2]`.
///
/// A uniform scan at `grid_per_unit` points per unit length is always done.
/// For B-spline windows `S` is a polynomial on each cell between breakpoints
/// `a n - p/2 + i`, so every cell is also searched exactly: endpoints plus the
/// roots of `S'`.
pub fn numeric_periodization_extrema(
    window: &dyn Window,
    a: f64,
    grid_per_unit: usize,
) -> Result<PeriodizationExtrema> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::ParameterRange(format!("a = {a} must be positive")));
    }
    if grid_per_unit < 100 {
        return Err(Error::InvalidInput(format!(
            "grid_per_unit = {grid_per_unit} is below the minimum of 100"
        )));
    }
    let n = ((a * grid_per_unit as f64).ceil() as usize).max(2);
    let mut ext =
        PeriodizationExtrema { inf: f64::INFINITY, sup: f64::NEG_INFINITY, argmin: 0.0, argmax: 0.0 };
    let mut consider = |x: f64, s: f64| {
        if s < ext.inf {
            ext.inf = s;
            ext.argmin = x;
        }
        if s > ext.sup {
            ext.sup = s;
            ext.argmax = x;
        }
    };
    for j in 0..=n {
        let x = -a / 2.0 + a * j as f64 / n as f64;
        consider(x, periodization_right(window, a, x));
    }
    if let Some(w) = window.as_bspline() {
        for (c0, c1) in bspline_cells(w, a) {
            let poly = cell_polynomial(w, a, c0, c1);
            let width = c1 - c0;
            consider(c0, poly.eval(0.0));
            consider(c1, poly.eval(width));
            let samples = ((width * grid_per_unit as f64).ceil() as usize).max(8);
            for root in derivative_roots(&poly, width, samples) {
                consider(c0 + root, poly.eval(root));
            }
        }
    }
    Ok(ext)
}

/// Cells of `[-a/2, a/2]` on which every translate is a single polynomial piece.
fn bspline_cells(w: &BSplineWindow, a: f64) -> Vec<(f64, f64)> {
    let h = w.half_support();
    let (lo, hi) = (-a / 2.0, a / 2.0);
    let mut cuts = vec![lo, hi];
    let n_lo = ((lo - h) / a).floor() as i64 - 1;
    let n_hi = ((hi + h) / a).ceil() as i64 + 1;
    for n in n_lo..=n_hi {
        for i in 0..=w.order() {
            let x = a * n as f64 - h + i as f64;
            if x > lo && x < hi {
                cuts.push(x);
            }
        }
    }
    cuts.sort_by(|x, y| x.total_cmp(y));
    cuts.dedup_by(|x, y| (*x - *y).abs() < 1e-14);
    cuts.windows(2).map(|c| (c[0], c[1])).collect()
}

/// `S(a, c0 + s)` as a polynomial in `s ∈ [0, c1 - c0]`.
fn cell_polynomial(w: &BSplineWindow, a: f64, c0: f64, c1: f64) -> Poly {
    let mid = 0.5 * (c0 + c1);
    let h = w.half_support();
    let n_lo = ((mid - h) / a).floor() as i64 - 1;
    let n_hi = ((mid + h) / a).ceil() as i64 + 1;
    let mut acc = Poly::zero();
    for n in n_lo..=n_hi {
        let shift = a * n as f64;
        if let Some(i) = w.piece_index(mid - shift) {
            let local = w.piece(i).shifted(c0 - shift - w.piece_left(i));
            acc.add_assign(&local.mul(&local));
        }
    }
    acc
}

fn derivative_roots(poly: &Poly, width: f64, samples: usize) -> Vec<f64> {
    let d = poly.derivative();
    let mut roots = Vec::new();
    let mut prev_x = 0.0;
    let mut prev_v = d.eval(0.0);
    for j in 1..=samples {
        let x = width * j as f64 / samples as f64;
        let v = d.eval(x);
        if v == 0.0 {
            roots.push(x);
        } else if prev_v != 0.0 && (prev_v < 0.0) != (v < 0.0) {
            roots.push(bisect(&d, prev_x, x));
        }
        prev_x = x;
        prev_v = v;
    }
    roots
}

fn bisect(f: &Poly, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f.eval(lo) < 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f.eval(mid) < 0.0) == flo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Exact frame bounds of `G(rect^(p), 1, 1)`: `B = 1` and
/// `A = 2^{2p+1}/π^{2p} Σ_{ν≥0} (2ν+1)^{-2p}`.
///
/// The series is summed directly up to `N` terms and the remainder is taken
/// from the Euler–Maclaurin expansion; `N` doubles until the first omitted
/// correction (a bound on the remainder for this completely monotone summand)
/// drops below `tol` relative to the prefactor.
pub fn krein_favard_exact(p: i64, tol: f64) -> Result<FrameBounds> {
    if p < 1 {
        return Err(Error::InvalidOrder(p));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidInput(format!("tol = {tol} must be positive")));
    }
    let s = 2.0 * p as f64;
    let prefactor = 2f64.powf(s + 1.0) / PI.powf(s);
    let series_tol = tol / prefactor;
    let mut n_terms: u64 = 8;
    loop {
        let (value, bound) = odd_zeta_sum(s, n_terms);
        if bound < series_tol || n_terms > 1 << 40 {
            let lower = prefactor * value;
            return FrameBounds::new(lower.min(1.0), 1.0, BoundKind::Exact);
        }
        n_terms *= 2;
    }
}

/// Even-index Bernoulli numbers `B_2, B_4, ..., B_16`.
const BERNOULLI_EVEN: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// `Σ_{ν≥0} (2ν+1)^{-s}` and a bound on the neglected Euler–Maclaurin remainder.
fn odd_zeta_sum(s: f64, n_terms: u64) -> (f64, f64) {
    // direct part, summed smallest-first
    let direct: f64 = (0..n_terms).rev().map(|nu| (2.0 * nu as f64 + 1.0).powf(-s)).sum();
    let x = 2.0 * n_terms as f64 + 1.0;
    // f^(j)(N) = (-2)^j (s)_j (2N+1)^{-s-j}
    let deriv = |j: usize| -> f64 {
        let mut rising = 1.0;
        for k in 0..j {
            rising *= s + k as f64;
        }
        (-2.0f64).powi(j as i32) * rising * x.powf(-s - j as f64)
    };
    let mut tail = x.powf(1.0 - s) / (2.0 * (s - 1.0)).max(f64::MIN_POSITIVE) + 0.5 * x.powf(-s);
    let used = BERNOULLI_EVEN.len() - 1;
    let mut fact = 1.0;
    for (k, b) in BERNOULLI_EVEN.iter().take(used).enumerate() {
        let order = 2 * (k + 1);
        fact *= (order - 1) as f64 * order as f64;
        tail -= b / fact * deriv(order - 1);
    }
    let order = 2 * (used + 1);
    fact *= (order - 1) as f64 * order as f64;
    let bound = (BERNOULLI_EVEN[used] / fact * deriv(order - 1)).abs();
    (direct + tail, bound)
}

/// Evaluates a Sobolev window: a closed-form callable or a sampled table.
#[derive(Clone)]
pub enum WindowFn {
    Closure(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
    /// Values on the uniform grid `-half_support + j·dt`, linearly interpolated.
    Table {
        dt: f64,
        values: Vec<f64>,
    },
}

impl fmt::Debug for WindowFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WindowFn::Closure(_) => f.write_str("WindowFn::Closure"),
            WindowFn::Table { dt, values } => {
                f.debug_struct("WindowFn::Table").field("dt", dt).field("len", &values.len()).finish()
            }
        }
    }
}

/// A continuous window vanishing outside `(-p/2, p/2)` with square-integrable
/// derivative, together with its bounds `m ≤ ψ ≤ M` on `[-a/2, a/2]`.
#[derive(Debug, Clone)]
pub struct SobolevWindow {
    half_support: f64,
    evaluator: WindowFn,
    deriv_l2_sq: f64,
    m: f64,
    big_m: f64,
    estimated: bool,
    label: String,
}

impl SobolevWindow {
    /// A window with user-supplied constants.
    pub fn from_closed_form<F>(half_support: f64, f: F, deriv_l2_sq: f64, m: f64, big_m: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(half_support > 0.0 && half_support.is_finite()) {
            return Err(Error::InvalidInput(format!("half support {half_support} must be positive")));
        }
        if !(deriv_l2_sq >= 0.0 && deriv_l2_sq.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "derivative norm {deriv_l2_sq} must be finite and non-negative"
            )));
        }
        if m > big_m {
            return Err(Error::InvalidInput(format!("m = {m} exceeds M = {big_m}")));
        }
        let edge = f(half_support).abs().max(f(-half_support).abs());
        if edge > 1e-9 {
            return Err(Error::InvalidInput(format!("window must vanish at ±{half_support} (found {edge})")));
        }
        Ok(SobolevWindow {
            half_support,
            evaluator: WindowFn::Closure(Arc::new(f)),
            deriv_l2_sq,
            m,
            big_m,
            estimated: false,
            label: "closed_form".into(),
        })
    }

    /// `ψ(x) = cos(πx/p)` on `(-p/2, p/2)`, paired with time step `a`:
    /// `‖ψ'‖² = π²/(2p)`, `m = cos(πa/(2p))`, `M = 1`.
    pub fn cosine(p: f64, a: f64) -> Result<Self> {
        if !(a > 0.0 && a < p) {
            return Err(Error::ParameterRange(format!("cosine window needs 0 < a < p (a = {a}, p = {p})")));
        }
        let mut w = Self::from_closed_form(
            p / 2.0,
            move |x: f64| {
                if x.abs() >= p / 2.0 {
                    0.0
                } else {
                    (PI * x / p).cos()
                }
            },
            PI * PI / (2.0 * p),
            (PI * a / (2.0 * p)).cos(),
            1.0,
        )?;
        w.label = format!("cos(pi x / {p})");
        Ok(w)
    }

    /// `rect^(p)` viewed as a Sobolev window (`p ≥ 2`), paired with time step `a`.
    pub fn bspline(p: i64, a: f64) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidInput("the rectangle is not continuous; use p >= 2".into()));
        }
        let w = BSplineWindow::new(p)?;
        if !(a > 0.0 && a < p as f64) {
            return Err(Error::ParameterRange(format!("B-spline window needs 0 < a < p (a = {a}, p = {p})")));
        }
        let deriv_l2_sq = w
            .pieces()
            .iter()
            .map(|piece| {
                let d = piece.derivative();
                integrate_poly_exp(&d.mul(&d), 0.0, 0.0, 1.0).re
            })
            .sum();
        let m = w.eval(a / 2.0);
        let big_m = w.eval(0.0);
        let half = w.half_support();
        let mut sw = Self::from_closed_form(half, move |x| w.eval(x), deriv_l2_sq, m, big_m)?;
        sw.label = format!("rect^({p})");
        Ok(sw)
    }

    /// A window given by samples on the uniform grid from `-half_support` to
    /// `half_support` inclusive. `m`, `M` are the sample extrema over
    /// `[-a/2, a/2]`; `‖ψ'‖²` comes from second-order finite differences and
    /// the trapezoid rule. Certificates built on this window are flagged as
    /// numerical estimates.
    pub fn from_samples(half_support: f64, values: Vec<f64>, a: f64) -> Result<Self> {
        if values.len() < 3 {
            return Err(Error::InvalidInput("need at least 3 window samples".into()));
        }
        if !(half_support > 0.0) {
            return Err(Error::InvalidInput("half support must be positive".into()));
        }
        let scale = values.iter().fold(0.0f64, |acc, v| acc.max(v.abs())).max(1.0);
        if values[0].abs() > 1e-12 * scale || values[values.len() - 1].abs() > 1e-12 * scale {
            return Err(Error::InvalidInput("sampled window must vanish at both support ends".into()));
        }
        let n = values.len() - 1;
        let dt = 2.0 * half_support / n as f64;
        let deriv: Vec<f64> = (0..=n)
            .map(|j| {
                if j == 0 {
                    (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * dt)
                } else if j == n {
                    (3.0 * values[n] - 4.0 * values[n - 1] + values[n - 2]) / (2.0 * dt)
                } else {
                    (values[j + 1] - values[j - 1]) / (2.0 * dt)
                }
            })
            .collect();
        let deriv_l2_sq = dt
            * (0..=n)
                .map(|j| {
                    let w = if j == 0 || j == n { 0.5 } else { 1.0 };
                    w * deriv[j] * deriv[j]
                })
                .sum::<f64>();
        let (mut m, mut big_m) = (f64::INFINITY, f64::NEG_INFINITY);
        for (j, &v) in values.iter().enumerate() {
            let x = -half_support + j as f64 * dt;
            if x.abs() <= a / 2.0 + 1e-12 {
                m = m.min(v);
                big_m = big_m.max(v);
            }
        }
        if !m.is_finite() {
            return Err(Error::InvalidInput("no samples fall inside [-a/2, a/2]; refine the table".into()));
        }
        Ok(SobolevWindow {
            half_support,
            evaluator: WindowFn::Table { dt, values },
            deriv_l2_sq,
            m,
            big_m,
            estimated: true,
            label: "sampled".into(),
        })
    }

    /// `p` in the support `[-p/2, p/2]`.
    pub fn support_length(&self) -> f64 {
        2.0 * self.half_support
    }

    pub fn deriv_l2_sq(&self) -> f64 {
        self.deriv_l2_sq
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn big_m(&self) -> f64 {
        self.big_m
    }

    pub fn is_estimated(&self) -> bool {
        self.estimated
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn evaluator(&self) -> &WindowFn {
        &self.evaluator
    }

    pub(crate) fn kind(&self) -> BoundKind {
        if self.estimated {
            BoundKind::NumericalEstimate
        } else {
            BoundKind::CertifiedLowerUpper
        }
    }
}

impl Window for SobolevWindow {
    fn value(&self, x: f64) -> f64 {
        if !(x.abs() < self.half_support) {
            return 0.0;
        }
        match &self.evaluator {
            WindowFn::Closure(f) => f(x),
            WindowFn::Table { dt, values } => {
                let pos = (x + self.half_support) / dt;
                let j = (pos.floor() as usize).min(values.len() - 2);
                let frac = pos - j as f64;
                values[j] * (1.0 - frac) + values[j + 1] * frac
            }
        }
    }

    fn half_support(&self) -> f64 {
        self.half_support
    }
}

/// Bounds of `G(ψ, a, b)`: `A = m²/b`, `B = ceil(p/a) M²/b`.
pub fn sobolev_bounds(w: &SobolevWindow, lat: LatticeParams) -> Result<FrameBounds> {
    let p = w.support_length();
    if !(p > lat.a) {
        return Err(Error::ParameterRange(format!("support length p = {p} must exceed a = {}", lat.a)));
    }
    if !(w.m > 0.0) {
        return Err(Error::WindowNotBoundedBelow { m: w.m });
    }
    let lower = w.m * w.m / lat.b;
    let upper = snap_ceil(p / lat.a) * w.big_m * w.big_m / lat.b;
    FrameBounds::new(lower, upper, w.kind())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub x: f64,
    pub periodization: f64,
    /// "lower" or "upper"
    pub side: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NecessaryConditionReport {
    pub min_periodization: f64,
    pub max_periodization: f64,
    /// `inf S - A·b`
    pub lower_margin: f64,
    /// `B·b - sup S`
    pub upper_margin: f64,
    pub margin: f64,
    pub grid_points: usize,
    pub violations: Vec<Violation>,
    pub passed: bool,
}

const MAX_REPORTED_VIOLATIONS: usize = 64;

/// Checks `A·b ≤ S(a, x) ≤ B·b` on a grid over `[-a/2, a/2]`. A violation
/// falsifies the claimed bounds.
pub fn check_necessary_condition(
    window: &dyn Window,
    lat: LatticeParams,
    bounds: &FrameBounds,
    grid_per_unit: usize,
) -> Result<NecessaryConditionReport> {
    if grid_per_unit < 100 {
        return Err(Error::InvalidInput(format!(
            "grid_per_unit = {grid_per_unit} is below the minimum of 100"
        )));
    }
    let a = lat.a;
    let n = ((a * grid_per_unit as f64).ceil() as usize).max(2);
    let lo_level = bounds.lower * lat.b;
    let hi_level = bounds.upper * lat.b;
    let slack = 1e-12 * hi_level.abs().max(1.0);
    let mut min_s = f64::INFINITY;
    let mut max_s = f64::NEG_INFINITY;
    let mut violations = Vec::new();
    let mut violated = false;
    for j in 0..=n {
        let x = -a / 2.0 + a * j as f64 / n as f64;
        let s = periodization_right(window, a, x);
        min_s = min_s.min(s);
        max_s = max_s.max(s);
        let side = if s < lo_level - slack {
            Some("lower")
        } else if s > hi_level + slack {
            Some("upper")
        } else {
            None
        };
        if let Some(side) = side {
            violated = true;
            if violations.len() < MAX_REPORTED_VIOLATIONS {
                violations.push(Violation { x, periodization: s, side: side.into() });
            }
        }
    }
    let lower_margin = min_s - lo_level;
    let upper_margin = hi_level - max_s;
    Ok(NecessaryConditionReport {
        min_periodization: min_s,
        max_periodization: max_s,
        lower_margin,
        upper_margin,
        margin: lower_margin.min(upper_margin),
        grid_points: n + 1,
        violations,
        passed: !violated,
    })
}
