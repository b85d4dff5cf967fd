//! Jitter-stability certificates.
//!
//! A certificate states a sufficient condition `lhs < rhs` for the perturbed
//! system to remain a frame, and when it holds, the bounds of the perturbed
//! frame both as dimensionless factors and as absolute bounds (base bounds of
//! the unperturbed system times the factors).
//!
//! All B-spline certificates (rectangle, general order, combined time and
//! frequency jitter, and the sinc-side dual) go through one kernel, so the
//! reductions between them hold bit for bit.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::bspline::BSplineWindow;
use crate::error::{Error, Result};
use crate::frame_bounds::{
    check_bspline_range, periodization_bounds, snap_floor, sobolev_bounds, FrameBounds, LatticeParams,
    SobolevWindow, LATTICE_EPS,
};

/// Time jitter per frequency row and frequency jitter.
///
/// Row `n` holds `L_n = sup_k |μ_{n,k} - k|`; `ell` is `sup_n |λ_n - n|`.
/// Only nonzero rows are stored.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(try_from = "JitterProfileRepr", into = "JitterProfileRepr")]
pub struct JitterProfile {
    rows: BTreeMap<i64, f64>,
    ell: f64,
}

// Row keys travel as strings so the shape also survives buffering inside
// tagged enums.
#[derive(Serialize, Deserialize)]
struct JitterProfileRepr {
    #[serde(default)]
    rows: BTreeMap<String, f64>,
    #[serde(default, rename = "total_L", skip_deserializing)]
    total_l: f64,
    #[serde(default)]
    ell: f64,
}

impl TryFrom<JitterProfileRepr> for JitterProfile {
    type Error = Error;

    fn try_from(r: JitterProfileRepr) -> Result<Self> {
        let mut rows = BTreeMap::new();
        for (k, l) in r.rows {
            let n: i64 = k
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("row index {k:?} is not an integer")))?;
            rows.insert(n, l);
        }
        JitterProfile::new(rows, r.ell)
    }
}

impl From<JitterProfile> for JitterProfileRepr {
    fn from(j: JitterProfile) -> Self {
        JitterProfileRepr {
            total_l: j.total_l(),
            rows: j.rows.iter().map(|(n, l)| (n.to_string(), *l)).collect(),
            ell: j.ell,
        }
    }
}

impl JitterProfile {
    pub fn new(rows: BTreeMap<i64, f64>, ell: f64) -> Result<Self> {
        let mut jp = JitterProfile::default();
        for (n, l) in rows {
            jp.set_row(n, l)?;
        }
        jp.set_ell(ell)?;
        Ok(jp)
    }

    /// All jitter on the single row `n = 0`.
    pub fn single_row(l: f64) -> Result<Self> {
        Self::new(BTreeMap::from([(0, l)]), 0.0)
    }

    pub fn set_row(&mut self, n: i64, l: f64) -> Result<()> {
        if !(0.0..1.0).contains(&l) {
            return Err(Error::InvalidInput(format!("row jitter L_{n} = {l} must lie in [0, 1)")));
        }
        if l == 0.0 {
            self.rows.remove(&n);
        } else {
            self.rows.insert(n, l);
        }
        Ok(())
    }

    pub fn set_ell(&mut self, ell: f64) -> Result<()> {
        if !(ell >= 0.0 && ell.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "frequency jitter {ell} must be finite and non-negative"
            )));
        }
        self.ell = ell;
        Ok(())
    }

    pub fn rows(&self) -> &BTreeMap<i64, f64> {
        &self.rows
    }

    pub fn row(&self, n: i64) -> f64 {
        self.rows.get(&n).copied().unwrap_or(0.0)
    }

    /// `L = Σ_n L_n`, recomputed on every call.
    pub fn total_l(&self) -> f64 {
        self.rows.values().sum()
    }

    pub fn ell(&self) -> f64 {
        self.ell
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Factors {
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    /// Which stability result produced the certificate.
    pub result: String,
    /// Where the unperturbed bounds came from.
    pub base: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorDim {
    pub a: f64,
    pub b: f64,
    #[serde(rename = "L")]
    pub l: f64,
}

/// The perturbed system a certificate speaks about, in enough detail to
/// rebuild it for verification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CertifiedSystem {
    /// `{e^{2πi bλ_n t} rect^(p)(t - aμ_{n,k})}`, or its Fourier image when
    /// `sinc_side` is set.
    Bspline {
        p: i64,
        lattice: LatticeParams,
        jitter: JitterProfile,
        #[serde(default)]
        sinc_side: bool,
    },
    Sobolev {
        window: String,
        lattice: LatticeParams,
        jitter: JitterProfile,
    },
    Tensor {
        dims: Vec<TensorDim>,
    },
    /// A bare perturbation-combination result with no concrete system.
    Abstract,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub condition_lhs: f64,
    pub condition_rhs: f64,
    pub satisfied: bool,
    pub relative_factors: Option<Factors>,
    pub absolute_bounds: Option<FrameBounds>,
    pub riesz: bool,
    pub provenance: Provenance,
    pub system: CertifiedSystem,
}

impl Certificate {
    /// Equality of every numeric field and flag, ignoring provenance and the
    /// system description.
    pub fn same_bounds(&self, other: &Certificate) -> bool {
        self.condition_lhs == other.condition_lhs
            && self.condition_rhs == other.condition_rhs
            && self.satisfied == other.satisfied
            && self.relative_factors == other.relative_factors
            && self.absolute_bounds == other.absolute_bounds
            && self.riesz == other.riesz
    }
}

/// Factors `((1 - √ratio)², (1 + √ratio)²)` where `ratio = C/A`.
fn factors_from_ratio(ratio: f64) -> Factors {
    let q = ratio.sqrt();
    Factors { lower: (1.0 - q) * (1.0 - q), upper: (1.0 + q) * (1.0 + q) }
}

/// Perturbation of a frame with bounds `(A, B)` by an operator of squared
/// norm at most `C·‖c‖²`: a frame again whenever `C < A`.
pub fn christensen_combine(base: FrameBounds, c: f64) -> Result<Certificate> {
    if !(c >= 0.0 && c.is_finite()) {
        return Err(Error::InvalidInput(format!("C = {c} must be non-negative")));
    }
    let satisfied = c < base.lower;
    let (relative_factors, absolute_bounds) = if satisfied {
        let f = factors_from_ratio(c / base.lower);
        (Some(f), Some(base.scaled(f.lower, f.upper)))
    } else {
        (None, None)
    };
    Ok(Certificate {
        condition_lhs: c,
        condition_rhs: base.lower,
        satisfied,
        relative_factors,
        absolute_bounds,
        riesz: false,
        provenance: Provenance {
            result: "frame perturbation by a bounded operator".into(),
            base: "caller supplied".into(),
            note: None,
        },
        system: CertifiedSystem::Abstract,
    })
}

/// Frame bounds after moving every frequency by at most `ell < 1/4`:
/// `(A (cos πℓ - sin πℓ), B (2 - cos πℓ + sin πℓ))`.
pub fn freq_jitter_adjust(base: FrameBounds, ell: f64) -> Result<FrameBounds> {
    check_ell(ell)?;
    let (c, s) = ((PI * ell).cos(), (PI * ell).sin());
    Ok(FrameBounds { lower: base.lower * (c - s), upper: base.upper * (2.0 - c + s), kind: base.kind })
}

fn check_ell(ell: f64) -> Result<()> {
    if !(0.0..0.25).contains(&ell) {
        return Err(Error::FrequencyJitterOutOfRange { ell });
    }
    Ok(())
}

/// Right-hand constant of the perturbed-translate inequality
/// `‖Σ_k α_k (g(· - k) - g(· - μ_k))‖² ≤ 2a(z+1)ℓ Σ|α_k|²` for translates
/// of the rectangle on the lattice `aZ`.
pub fn perturbation_bound(a: f64, ell: f64) -> f64 {
    let z = if a > 1.0 && ell > 0.0 && ell <= (a - 1.0) / (2.0 * a) { 0.0 } else { ell.floor() + 1.0 };
    2.0 * a * (z + 1.0) * ell
}

/// The same bound with the larger overlap count `z = 2(floor(ℓ) + 1)`.
pub fn perturbation_bound_conservative(a: f64, ell: f64) -> f64 {
    2.0 * a * (2.0 * (ell.floor() + 1.0) + 1.0) * ell
}

fn bspline_kernel(p: i64, lat: LatticeParams, jit: &JitterProfile) -> Result<Certificate> {
    check_bspline_range(p, lat.a)?;
    let ell = jit.ell();
    check_ell(ell)?;
    let base = periodization_bounds(p, lat)?;
    let r = BSplineWindow::new(p)?.eval(lat.a / 2.0);
    let c = (PI * ell).cos() - (PI * ell).sin();
    let lhs = 4.0 * lat.a * lat.b * jit.total_l();
    let rhs = r * r * c;
    let satisfied = lhs < rhs;
    let (relative_factors, absolute_bounds) = if satisfied {
        let q = (2.0 / r) * (lat.a * lat.b * jit.total_l() / c).sqrt();
        let f = Factors { lower: (1.0 - q) * (1.0 - q), upper: (1.0 + q) * (1.0 + q) };
        let adjusted = freq_jitter_adjust(base, ell)?;
        (Some(f), Some(adjusted.scaled(f.lower, f.upper)))
    } else {
        (None, None)
    };
    let riesz = satisfied && lat.is_critical() && (ell == 0.0 || p == 1);
    Ok(Certificate {
        condition_lhs: lhs,
        condition_rhs: rhs,
        satisfied,
        relative_factors,
        absolute_bounds,
        riesz,
        provenance: Provenance {
            result: String::new(),
            base: format!("periodization_bounds(p={p})"),
            note: None,
        },
        system: CertifiedSystem::Bspline { p, lattice: lat, jitter: jit.clone(), sinc_side: false },
    })
}

/// Rectangle window, time jitter only: frame if `4abL < 1`.
pub fn certify_rect(lat: LatticeParams, jit: &JitterProfile) -> Result<Certificate> {
    let mut jit = jit.clone();
    jit.set_ell(0.0)?;
    let mut cert = bspline_kernel(1, lat, &jit)?;
    cert.provenance.result = "rectangle window under time jitter".into();
    Ok(cert)
}

/// `rect^(p)` window, time jitter only: frame if `4abL < rect^(p)(a/2)²`.
pub fn certify_bspline(p: i64, lat: LatticeParams, jit: &JitterProfile) -> Result<Certificate> {
    let mut jit = jit.clone();
    jit.set_ell(0.0)?;
    let mut cert = bspline_kernel(p, lat, &jit)?;
    cert.provenance.result = format!("rect^({p}) window under time jitter");
    Ok(cert)
}

/// `rect^(p)` window with time jitter `L` and frequency jitter `ℓ < 1/4`:
/// frame if `4abL < rect^(p)(a/2)² (cos πℓ - sin πℓ)`.
pub fn certify_combined(p: i64, lat: LatticeParams, jit: &JitterProfile) -> Result<Certificate> {
    let mut cert = bspline_kernel(p, lat, jit)?;
    cert.provenance.result = format!("rect^({p}) window under time and frequency jitter");
    if jit.ell() > 0.0 {
        cert.provenance.note = Some("base bounds adjusted for frequency jitter".into());
    }
    Ok(cert)
}

/// The Fourier image `{e^{-2πi aμ t} sinc^p(t - bλ_n)}` of the combined
/// family. The Fourier transform is unitary, so the bounds are those of
/// [`certify_combined`].
pub fn certify_sinc(p: i64, lat: LatticeParams, jit: &JitterProfile) -> Result<Certificate> {
    let mut cert = certify_combined(p, lat, jit)?;
    cert.provenance.result = format!("sinc^{p} family under time and frequency jitter");
    cert.provenance.note = Some(
        "bounds transferred from the rect^(p) family by Plancherel; time and frequency roles swap".into(),
    );
    if let CertifiedSystem::Bspline { sinc_side, .. } = &mut cert.system {
        *sinc_side = true;
    }
    Ok(cert)
}

/// Continuous window with square-integrable derivative under per-row time
/// jitter: frame if `C² = b a² ‖ψ'‖² Σ_s floor(p/a + L_s) L_s² < m²`.
pub fn certify_sobolev(w: &SobolevWindow, lat: LatticeParams, jit: &JitterProfile) -> Result<Certificate> {
    let base = sobolev_bounds(w, lat)?;
    let p = w.support_length();
    let sum: f64 = jit.rows().values().map(|&l| snap_floor(p / lat.a + l) * l * l).sum();
    let c2 = lat.b * lat.a * lat.a * w.deriv_l2_sq() * sum;
    let m2 = w.m() * w.m();
    let satisfied = c2 < m2;
    let (relative_factors, absolute_bounds) = if satisfied {
        let q = c2.sqrt() / w.m();
        let f = Factors { lower: (1.0 - q) * (1.0 - q), upper: (1.0 + q) * (1.0 + q) };
        (Some(f), Some(base.scaled(f.lower, f.upper)))
    } else {
        (None, None)
    };
    Ok(Certificate {
        condition_lhs: c2,
        condition_rhs: m2,
        satisfied,
        relative_factors,
        absolute_bounds,
        riesz: satisfied && lat.is_critical(),
        provenance: Provenance {
            result: format!("Sobolev window {} under time jitter", w.label()),
            base: "sobolev_bounds".into(),
            note: w.is_estimated().then(|| "window constants estimated from samples".into()),
        },
        system: CertifiedSystem::Sobolev { window: w.label().to_string(), lattice: lat, jitter: jit.clone() },
    })
}

/// Tensor product of rectangle systems, one jitter bound per coordinate:
/// frame if every `L_j < 1/(4 a_j b_j)`.
pub fn certify_tensor(dims: &[TensorDim]) -> Result<Certificate> {
    if dims.is_empty() {
        return Err(Error::InvalidInput("tensor certificate needs at least one dimension".into()));
    }
    let mut per_dim = Vec::with_capacity(dims.len());
    for d in dims {
        let lat = LatticeParams::new(d.a, d.b)?;
        let jit = JitterProfile::single_row(d.l)?;
        per_dim.push(bspline_kernel(1, lat, &jit)?);
    }
    let satisfied = per_dim.iter().all(|c| c.satisfied);
    let lhs = per_dim.iter().map(|c| c.condition_lhs).fold(f64::NEG_INFINITY, f64::max);
    let (relative_factors, absolute_bounds) = if satisfied {
        let mut f = Factors { lower: 1.0, upper: 1.0 };
        let mut bounds =
            FrameBounds { lower: 1.0, upper: 1.0, kind: crate::frame_bounds::BoundKind::CertifiedLowerUpper };
        for c in &per_dim {
            let rf = c.relative_factors.expect("satisfied certificate has factors");
            let ab = c.absolute_bounds.expect("satisfied certificate has bounds");
            f.lower *= rf.lower;
            f.upper *= rf.upper;
            bounds.lower *= ab.lower;
            bounds.upper *= ab.upper;
        }
        (Some(f), Some(bounds))
    } else {
        (None, None)
    };
    Ok(Certificate {
        condition_lhs: lhs,
        condition_rhs: 1.0,
        satisfied,
        relative_factors,
        absolute_bounds,
        riesz: satisfied && per_dim.iter().all(|c| c.riesz),
        provenance: Provenance {
            result: format!("{}-dimensional tensor rectangle system", dims.len()),
            base: "product of periodization_bounds(p=1) per coordinate".into(),
            note: None,
        },
        system: CertifiedSystem::Tensor { dims: dims.to_vec() },
    })
}

/// `|ab - 1| ≤ LATTICE_EPS`, exposed for callers building their own checks.
pub fn is_critical_density(a: f64, b: f64) -> bool {
    (a * b - 1.0).abs() <= LATTICE_EPS
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lat(a: f64, b: f64) -> LatticeParams {
        LatticeParams::new(a, b).unwrap()
    }

    fn jit(l: f64, ell: f64) -> JitterProfile {
        JitterProfile::new(BTreeMap::from([(0, l)]), ell).unwrap()
    }

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol
    }

    #[test]
    fn profile_keeps_only_nonzero_rows() {
        let mut j = JitterProfile::default();
        j.set_row(3, 0.1).unwrap();
        j.set_row(-2, 0.2).unwrap();
        assert!(close(j.total_l(), 0.3, 1e-15));
        j.set_row(3, 0.0).unwrap();
        assert_eq!(j.rows().len(), 1);
        assert_eq!(j.total_l(), 0.2);
        assert!(j.set_row(0, 1.0).is_err());
        assert!(j.set_row(0, -0.1).is_err());
    }

    #[test]
    fn profile_json_shape() {
        let j = JitterProfile::new(BTreeMap::from([(0, 0.25), (-1, 0.125)]), 0.1).unwrap();
        let s = serde_json::to_string(&j).unwrap();
        assert_eq!(s, r#"{"rows":{"-1":0.125,"0":0.25},"total_L":0.375,"ell":0.1}"#);
        let back: JitterProfile =
            serde_json::from_str(r#"{"rows":{"-1":0.125,"0":0.25},"ell":0.1}"#).unwrap();
        assert_eq!(back, j);
        assert!(serde_json::from_str::<JitterProfile>(r#"{"rows":{"0":1.5}}"#).is_err());
    }

    #[test]
    fn combine_examples() {
        let one = FrameBounds::new(1.0, 1.0, crate::frame_bounds::BoundKind::Exact).unwrap();
        let c = christensen_combine(one, 0.0).unwrap();
        let f = c.relative_factors.unwrap();
        assert_eq!((f.lower, f.upper), (1.0, 1.0));
        let ab = c.absolute_bounds.unwrap();
        assert_eq!((ab.lower, ab.upper), (1.0, 1.0));
        let c = christensen_combine(one, 0.25).unwrap();
        let f = c.relative_factors.unwrap();
        assert_eq!((f.lower, f.upper), (0.25, 2.25));
        let c = christensen_combine(one, 2.0).unwrap();
        assert!(!c.satisfied && c.relative_factors.is_none() && c.absolute_bounds.is_none());
        let base = FrameBounds::new(2.0, 3.0, crate::frame_bounds::BoundKind::Exact).unwrap();
        let c = christensen_combine(base, 0.5).unwrap();
        let ab = c.absolute_bounds.unwrap();
        assert_eq!((ab.lower, ab.upper), (0.5, 6.75));
    }

    #[test]
    fn rect_examples() {
        let c = certify_rect(lat(1.0, 1.0), &jit(0.0625, 0.0)).unwrap();
        assert!(c.satisfied && c.riesz);
        let f = c.relative_factors.unwrap();
        assert_eq!((f.lower, f.upper), (0.25, 2.25));
        let c = certify_rect(lat(1.0, 1.0), &JitterProfile::default()).unwrap();
        assert_eq!(c.relative_factors.unwrap(), Factors { lower: 1.0, upper: 1.0 });
        assert!(c.riesz);
        let c = certify_rect(lat(1.0, 1.0), &jit(0.3, 0.0)).unwrap();
        assert!(!c.satisfied && !c.riesz);
        assert!(matches!(certify_rect(lat(1.5, 0.5), &jit(0.01, 0.0)), Err(Error::NotComplete { .. })));
        let c = certify_rect(lat(0.5, 1.0), &jit(0.1, 0.0)).unwrap();
        assert!(c.satisfied && !c.riesz);
    }

    #[test]
    fn bspline_examples() {
        let c = certify_bspline(2, lat(1.0, 1.0), &jit(0.01, 0.0)).unwrap();
        assert!(c.satisfied);
        assert!(close(c.condition_lhs, 0.04, 1e-15) && close(c.condition_rhs, 0.25, 1e-15));
        assert!(close(c.relative_factors.unwrap().lower, 0.36, 1e-14));
        let c = certify_bspline(2, lat(1.0, 1.0), &jit(0.0625, 0.0)).unwrap();
        assert_eq!(c.condition_lhs, c.condition_rhs);
        assert!(!c.satisfied);
        let r = certify_rect(lat(1.0, 1.0), &jit(0.0625, 0.0)).unwrap();
        let b = certify_bspline(1, lat(1.0, 1.0), &jit(0.0625, 0.0)).unwrap();
        assert!(r.same_bounds(&b));
    }

    #[test]
    fn perturbation_bound_examples() {
        assert!(close(perturbation_bound(2.0, 0.2), 0.8, 1e-15));
        assert_eq!(perturbation_bound(1.0, 0.5), 2.0);
        assert_eq!(perturbation_bound(1.0, 0.0), 0.0);
        assert!(close(perturbation_bound_conservative(1.0, 0.5), 3.0, 1e-15));
    }

    #[test]
    fn freq_adjust_examples() {
        let one = FrameBounds::new(1.0, 1.0, crate::frame_bounds::BoundKind::Exact).unwrap();
        let f = freq_jitter_adjust(one, 0.0).unwrap();
        assert_eq!((f.lower, f.upper), (1.0, 1.0));
        let f = freq_jitter_adjust(one, 0.125).unwrap();
        let (c, s) = ((PI / 8.0).cos(), (PI / 8.0).sin());
        assert!(close(f.lower, c - s, 1e-15) && close(f.upper, 2.0 - c + s, 1e-15));
        assert!(close(f.lower, 0.5412, 5e-5) && close(f.upper, 1.4588, 5e-5));
        let two = FrameBounds::new(2.0, 3.0, crate::frame_bounds::BoundKind::Exact).unwrap();
        let g = freq_jitter_adjust(two, 0.125).unwrap();
        assert!(close(g.lower, 2.0 * f.lower, 1e-15) && close(g.upper, 3.0 * f.upper, 1e-15));
        assert!(matches!(freq_jitter_adjust(one, 0.25), Err(Error::FrequencyJitterOutOfRange { .. })));
    }

    #[test]
    fn combined_examples() {
        let c = certify_combined(1, lat(1.0, 1.0), &jit(1.0 / 32.0, 0.125)).unwrap();
        assert!(c.satisfied);
        assert!(close(c.condition_lhs, 0.125, 1e-15));
        let cs = (PI / 8.0).cos() - (PI / 8.0).sin();
        let q = 2.0 * ((1.0 / 32.0) / cs).sqrt();
        assert!(close(c.relative_factors.unwrap().lower, (1.0 - q).powi(2), 1e-15));
        // the rounded intermediate 0.4805 gives 0.2699; unrounded it is 0.26978
        assert!(close(c.relative_factors.unwrap().lower, 0.2699, 2e-4));
        let c = certify_combined(1, lat(1.0, 1.0), &jit(0.2, 0.12)).unwrap();
        assert!(!c.satisfied);
        let e = 0.12 * PI;
        assert!(close(c.condition_rhs, e.cos() - e.sin(), 1e-15));
        assert!(close(c.condition_rhs, 0.5621, 1e-3));
        assert!(certify_combined(2, lat(1.0, 1.0), &jit(0.01, 0.3)).is_err());
    }

    #[test]
    fn sinc_matches_combined() {
        let c = certify_combined(1, lat(1.0, 1.0), &jit(1.0 / 32.0, 0.125)).unwrap();
        let s = certify_sinc(1, lat(1.0, 1.0), &jit(1.0 / 32.0, 0.125)).unwrap();
        assert!(c.same_bounds(&s));
        assert_ne!(c.provenance, s.provenance);
        let s = certify_sinc(2, lat(1.0, 1.0), &jit(0.01, 0.0)).unwrap();
        let b = certify_bspline(2, lat(1.0, 1.0), &jit(0.01, 0.0)).unwrap();
        assert!(s.same_bounds(&b));
    }

    #[test]
    fn sobolev_examples() {
        let w = SobolevWindow::cosine(4.0, 1.0).unwrap();
        let c = certify_sobolev(&w, lat(1.0, 1.0), &JitterProfile::default()).unwrap();
        assert_eq!(c.relative_factors.unwrap(), Factors { lower: 1.0, upper: 1.0 });

        let c = certify_sobolev(&w, lat(1.0, 1.0), &jit(0.1, 0.0)).unwrap();
        // independent arithmetic: ‖ψ'‖² = π²/8, floor(4.1) = 4, m = cos(π/8)
        let c2 = PI * PI / 8.0 * 4.0 * 0.01;
        let m = (PI / 8.0).cos();
        assert!(close(c.condition_lhs, c2, 1e-15));
        assert!(close(c.condition_lhs, PI * PI / 200.0, 1e-15));
        assert!(close(c.condition_rhs, m * m, 1e-15));
        assert!(c.satisfied);
        let lower = (1.0 - c2.sqrt() / m).powi(2);
        assert!(close(c.relative_factors.unwrap().lower, lower, 1e-14));
        assert!(close(lower, 0.5769, 1e-4));

        let heavy = JitterProfile::new((0..40).map(|n| (n, 0.9)).collect(), 0.0).unwrap();
        assert!(!certify_sobolev(&w, lat(1.0, 1.0), &heavy).unwrap().satisfied);
    }

    #[test]
    fn tensor_examples() {
        let d = TensorDim { a: 1.0, b: 1.0, l: 0.0625 };
        let c = certify_tensor(&[d.clone(), d.clone()]).unwrap();
        let f = c.relative_factors.unwrap();
        assert_eq!((f.lower, f.upper), (0.0625, 5.0625));
        assert!(c.riesz);
        let one = certify_tensor(std::slice::from_ref(&d)).unwrap();
        let r = certify_rect(lat(1.0, 1.0), &jit(0.0625, 0.0)).unwrap();
        assert!(one.same_bounds(&r));
        let bad = TensorDim { a: 1.0, b: 1.0, l: 0.5 };
        assert!(!certify_tensor(&[d, bad]).unwrap().satisfied);
        assert!(matches!(certify_tensor(&[]), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn certificate_json_round_trip() {
        let c = certify_combined(3, lat(1.2, 0.7), &jit(0.01, 0.05)).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        let back: Certificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }

    fn draw() -> impl Strategy<Value = (i64, f64, f64, f64)> {
        (1i64..=6, 0.05f64..1.0, 0.1f64..1.0, 0.0f64..0.3).prop_map(|(p, a, bf, l)| {
            let a = if p == 1 { a } else { a * (p as f64).min(2.0) * 0.99 };
            let b = bf / a;
            (p, a, b.min(1.0 / a), l)
        })
    }

    proptest! {
        #[test]
        fn reductions_hold_exactly((p, a, b, l) in draw()) {
            let lat = LatticeParams::new(a, b).unwrap();
            let j = jit(l, 0.0);
            let bs = certify_bspline(p, lat, &j).unwrap();
            let cb = certify_combined(p, lat, &j).unwrap();
            prop_assert!(bs.same_bounds(&cb));
            let sn = certify_sinc(p, lat, &j).unwrap();
            prop_assert!(sn.same_bounds(&cb));
            if p == 1 {
                let r = certify_rect(lat, &j).unwrap();
                prop_assert!(r.same_bounds(&bs));
                let t = certify_tensor(&[TensorDim { a, b, l }]).unwrap();
                prop_assert!(t.same_bounds(&r));
            }
        }

        #[test]
        fn factors_are_monotone_in_jitter(
            (p, a, b, _) in draw(),
            ell in 0.0f64..0.2,
        ) {
            let lat = LatticeParams::new(a, b).unwrap();
            let mut prev: Option<Factors> = None;
            for i in 0..40 {
                let l = i as f64 * 0.005;
                let c = certify_combined(p, lat, &jit(l, ell)).unwrap();
                let Some(f) = c.relative_factors else { break };
                prop_assert!(f.lower <= 1.0 && f.upper >= 1.0);
                if let Some(g) = prev {
                    prop_assert!(f.lower <= g.lower && f.upper >= g.upper);
                }
                prev = Some(f);
            }
            let mut prev: Option<Factors> = None;
            for i in 0..25 {
                let e = i as f64 * 0.01;
                let c = certify_combined(p, lat, &jit(0.002, e)).unwrap();
                let Some(f) = c.relative_factors else { break };
                if let Some(g) = prev {
                    prop_assert!(f.lower <= g.lower && f.upper >= g.upper);
                }
                prev = Some(f);
            }
        }

        #[test]
        fn satisfied_iff_strict((p, a, b, l) in draw(), ell in 0.0f64..0.24) {
            let lat = LatticeParams::new(a, b).unwrap();
            let c = certify_combined(p, lat, &jit(l, ell)).unwrap();
            prop_assert_eq!(c.satisfied, c.condition_lhs < c.condition_rhs);
            prop_assert_eq!(c.satisfied, c.relative_factors.is_some());
            if c.riesz {
                prop_assert!(c.satisfied && lat.is_critical());
            }
        }
    }

    #[test]
    fn factors_tend_to_one() {
        for p in 1..=4 {
            let c = certify_combined(p, lat(0.9, 1.0), &jit(1e-14, 1e-14)).unwrap();
            let f = c.relative_factors.unwrap();
            assert!(close(f.lower, 1.0, 1e-6) && close(f.upper, 1.0, 1e-6));
        }
    }
}
