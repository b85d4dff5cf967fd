//! Frame bounds of B-spline and Sobolev windows from the periodization.

use jitterframe::bspline::BSplineWindow;
use jitterframe::frame_bounds::{
    check_necessary_condition, krein_favard_exact, numeric_periodization_extrema, periodization_bounds,
    sobolev_bounds, LatticeParams, SobolevWindow, DEFAULT_GRID_PER_UNIT, DEFAULT_KREIN_FAVARD_TOL,
};

pub fn run() -> jitterframe::Result<()> {
    println!("p  a    periodization bounds      numeric inf/sup of S");
    for p in 1..=4 {
        for a in [0.5, 1.0] {
            let lat = LatticeParams::new(a, 1.0 / a)?;
            let bounds = periodization_bounds(p, lat)?;
            let ext = numeric_periodization_extrema(&BSplineWindow::new(p)?, a, DEFAULT_GRID_PER_UNIT)?;
            println!(
                "{p}  {a:.1}  [{:.6}, {:.6}]   [{:.6}, {:.6}]",
                bounds.lower * lat.b,
                bounds.upper * lat.b,
                ext.inf,
                ext.sup
            );
        }
    }

    println!("\nexact lower bounds at a = b = 1:");
    for p in 1..=4 {
        println!("  p = {p}: {:.15}", krein_favard_exact(p, DEFAULT_KREIN_FAVARD_TOL)?.lower);
    }

    let lat = LatticeParams::new(1.0, 1.0)?;
    let cos = SobolevWindow::cosine(4.0, 1.0)?;
    let b = sobolev_bounds(&cos, lat)?;
    println!("\n{}: A = {:.6}, B = {:.6}", cos.label(), b.lower, b.upper);
    let report = check_necessary_condition(&cos, lat, &b, DEFAULT_GRID_PER_UNIT)?;
    println!(
        "  periodization range [{:.6}, {:.6}], necessary condition {}",
        report.min_periodization,
        report.max_periodization,
        if report.passed { "holds" } else { "fails" }
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> jitterframe::Result<()> {
    run()
}
