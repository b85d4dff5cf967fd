use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frame_bounds::LatticeParams;
use crate::stability::{certify_bspline, certify_rect, Certificate, JitterProfile};

/// Subtracted from the supremal certified jitter.
pub const BUDGET_GUARD: f64 = 1e-9;

/// How a jitter bound is charged against the certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum JitterModel {
    /// `L = Σ_n L_n` over all frequency rows.
    #[serde(rename = "total-L")]
    TotalL,
    /// Only the `n = 0` row is jittered, as for samples fed to a zero-order
    /// hold: `{e^{2πint} rect(t - k)}_{n≠0} ∪ {rect(t - μ_k)}`.
    #[serde(rename = "single-row")]
    SingleRow,
}

impl fmt::Display for JitterModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            JitterModel::TotalL => "total-L",
            JitterModel::SingleRow => "single-row",
        })
    }
}

impl FromStr for JitterModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "total-L" => Ok(JitterModel::TotalL),
            "single-row" => Ok(JitterModel::SingleRow),
            _ => Err(Error::InvalidInput(format!(
                "unknown jitter model {s:?} (expected total-L or single-row)"
            ))),
        }
    }
}

/// What the certified system has to be.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BudgetTarget {
    #[default]
    Frame,
    Riesz,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JitterBudget {
    pub p: i64,
    #[serde(rename = "T")]
    pub period: f64,
    pub a: f64,
    pub b: f64,
    pub model: JitterModel,
    pub target: BudgetTarget,
    /// Certified jitter in units of `T` (supremum minus guard), or 0.
    #[serde(rename = "budget_L")]
    pub budget: f64,
    /// `budget · T`.
    pub budget_time: f64,
    pub supremum: f64,
    pub guard: f64,
    pub diagnostic: Option<String>,
}

/// The certificate the budget is computed from, for jitter `l` on the row
/// `n = 0`.
///
/// Both models share it: the condition depends on the rows only through
/// `Σ_n L_n`, so a total budget can sit on any single row, and in the
/// single-row model it has to.
pub fn budget_certificate(p: i64, lat: LatticeParams, l: f64) -> Result<Certificate> {
    let jit = JitterProfile::single_row(l)?;
    if p == 1 {
        certify_rect(lat, &jit)
    } else {
        certify_bspline(p, lat, &jit)
    }
}

fn accepted(cert: &Certificate, target: BudgetTarget) -> bool {
    cert.satisfied && (target == BudgetTarget::Frame || cert.riesz)
}

/// Largest jitter (in units of `T`) the certificate accepts, minus
/// [`BUDGET_GUARD`], found by bisection on `[0, 1)`.
///
/// Lattice errors (such as an incomplete rectangle system) are returned as
/// errors; a valid setting where no positive jitter is certifiable gives a
/// zero budget with a diagnostic.
pub fn jitter_budget(
    p: i64,
    period: f64,
    lat: LatticeParams,
    model: JitterModel,
    target: BudgetTarget,
) -> Result<JitterBudget> {
    if !(period > 0.0 && period.is_finite()) {
        return Err(Error::InvalidInput(format!("sampling period T = {period} must be positive")));
    }
    let base = budget_certificate(p, lat, 0.0)?;
    let mut out = JitterBudget {
        p,
        period,
        a: lat.a,
        b: lat.b,
        model,
        target,
        budget: 0.0,
        budget_time: 0.0,
        supremum: 0.0,
        guard: BUDGET_GUARD,
        diagnostic: None,
    };
    if !accepted(&base, target) {
        out.diagnostic = Some(if base.satisfied {
            format!("the unperturbed system is a frame but not a Riesz basis (ab = {})", lat.a * lat.b)
        } else {
            "the unperturbed system is not certified".into()
        });
        return Ok(out);
    }
    let top = 1.0 - f64::EPSILON;
    let (mut lo, mut hi) = (0.0f64, top);
    if accepted(&budget_certificate(p, lat, top)?, target) {
        lo = top;
        out.diagnostic = Some("every admissible row jitter L < 1 is certified".into());
    } else {
        while hi - lo > f64::EPSILON * hi.max(1e-300) {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if accepted(&budget_certificate(p, lat, mid)?, target) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    out.supremum = lo;
    if lo <= BUDGET_GUARD {
        out.diagnostic = Some(format!("no jitter above the guard {BUDGET_GUARD:e} is certifiable"));
        return Ok(out);
    }
    out.budget = lo - BUDGET_GUARD;
    out.budget_time = out.budget * period;
    Ok(out)
}
