//! Cardinal B-spline windows: evaluation, partition of unity and the Fourier side.

use jitterframe::bspline::{eval_by_recursion, fourier_sinc, BSplineWindow, DEFAULT_RECURSION_NODES};

pub fn run() -> jitterframe::Result<()> {
    for p in 1..=4 {
        let w = BSplineWindow::new(p)?;
        let samples: Vec<String> =
            [0.0, 0.25, 0.5, 1.0, 1.5].iter().map(|&x| format!("{:.6}", w.eval(x))).collect();
        println!("rect^({p}) on [-{h}, {h}]: {}", samples.join(" "), h = w.half_support());

        // integer translates sum to one everywhere
        let x = 0.3712;
        let pu: f64 = (-10..=10).map(|k| w.eval(x - k as f64)).sum();
        let direct = eval_by_recursion(p, 0.3, DEFAULT_RECURSION_NODES)?;
        println!(
            "  partition of unity at x = {x}: {pu:.15}; recursion at 0.3: {direct:.15} vs {:.15}",
            w.eval(0.3)
        );
        println!("  Fourier transform at xi = 0.5: sinc^{p} = {:.6}", fourier_sinc(p as u32, 0.5));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> jitterframe::Result<()> {
    run()
}
