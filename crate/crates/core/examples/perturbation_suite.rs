//! The perturbation inequality behind the certificates, and the Fourier-side
//! duality of B-spline families.

use std::sync::Arc;

use jitterframe::bspline::BSplineWindow;
use jitterframe::frame_bounds::LatticeParams;
use jitterframe::stability::JitterProfile;
use jitterframe::verifier::{
    check_plancherel, perturbation_operator_norm_bspline, perturbation_trials, AtomSpec,
};

pub fn run() -> jitterframe::Result<()> {
    let report = perturbation_trials(1000, 42);
    println!(
        "exponential-sum inequality: {} trials ({} in the gap case), {} violations of the stated constant, {} of the conservative one; tightest unviolated: {}",
        report.trials,
        report.gap_case_trials,
        report.statement_violations.len(),
        report.conservative_violations.len(),
        report.tightest_unviolated
    );

    let lat = LatticeParams::new(1.0, 1.0)?;
    let l = 0.05;
    for p in 1..=3 {
        let norm = perturbation_operator_norm_bspline(p, lat, &JitterProfile::single_row(l)?, 50, 9)?;
        println!("p = {p}: largest observed ‖perturbation‖² = {norm:.5} <= 4aL = {:.5}", 4.0 * l);
    }

    for p in 1..=2 {
        let w = Arc::new(BSplineWindow::new(p)?);
        let atoms: Vec<AtomSpec> =
            (0..5).map(|i| AtomSpec::new(0.5 * i as f64 - 1.0, 0.3 * i as f64, w.clone())).collect();
        let d = check_plancherel(&atoms, 64.0, 1e-4);
        println!(
            "p = {p}: time-side vs frequency-side Gram differ by {:.2e} (tail bound {:.1e})",
            d.max_entry_difference, d.tail_bound
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> jitterframe::Result<()> {
    run()
}
