use rayon::prelude::*;

use super::jitter::JitteredSample;
use super::signal::{NodeGrid, SignalGrid};
use crate::bspline::BSplineWindow;
use crate::error::{Error, Result};

/// `f_pOH(t) = Σ_n q_n rect^(p)((t - T μ_n)/T)` on the nodes of `grid`, where
/// sample `n` sits at `T μ_n` with value `q_n`.
///
/// The window is evaluated with right limits (cells `[-1/2, 1/2)` for the
/// rectangle), so the zero-order hold is a staircase with no doubled values
/// at cell boundaries. For `p ≥ 2` the window is continuous and the choice
/// does not matter.
pub fn hold_reconstruct(
    samples: &[JitteredSample],
    p: i64,
    period: f64,
    grid: NodeGrid,
) -> Result<SignalGrid> {
    let window = BSplineWindow::new(p)?;
    if !(period > 0.0 && period.is_finite()) {
        return Err(Error::InvalidInput(format!("sampling period T = {period} must be positive")));
    }
    let mut sorted: Vec<(f64, f64)> = samples.iter().map(|s| (s.position / period, s.value)).collect();
    sorted.sort_by(|x, y| x.0.total_cmp(&y.0));
    let reach = window.half_support();
    let values = (0..grid.len)
        .into_par_iter()
        .map(|j| {
            let u = grid.node(j) / period;
            let first = sorted.partition_point(|&(mu, _)| mu < u - reach);
            sorted[first..]
                .iter()
                .take_while(|&&(mu, _)| mu <= u + reach)
                .map(|&(mu, q)| q * window.eval_right(u - mu))
                .sum()
        })
        .collect();
    SignalGrid::new(grid.t0, grid.dt, values)
}
