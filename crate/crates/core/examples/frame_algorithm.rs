//! Reconstructing a signal from its coefficients in a jittered rectangle frame.

use jitterframe::frame_bounds::LatticeParams;
use jitterframe::stability::{certify_rect, JitterProfile};
use jitterframe::verifier::{frame_reconstruct, DiscreteFamily, Grid};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn run() -> jitterframe::Result<()> {
    let l = 0.0625;
    let cert = certify_rect(LatticeParams::new(1.0, 1.0)?, &JitterProfile::single_row(l)?)?;
    let bounds = cert.absolute_bounds.expect("certified");

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let offsets: Vec<f64> = (0..=24).map(|_| rng.random_range(-l..=l)).collect();
    let grid = Grid::covering(-12.5, 12.5, 32)?;
    let family = DiscreteFamily::complete_rect_family(grid, -12..=12, |n, k| {
        k as f64 + if n == 0 { offsets[(k + 12) as usize] } else { 0.0 }
    })?;

    let signal: Vec<Complex64> = (0..grid.len)
        .map(|j| {
            let t = grid.point(j);
            Complex64::new((-(t / 6.0).powi(2)).exp() * (2.0 * t).sin(), 0.0)
        })
        .collect();
    let coeffs = family.analysis(&signal);
    let (_, report) = frame_reconstruct(&coeffs, &family, &bounds, 70, Some(&signal))?;

    println!("{} atoms, certified bounds ({}, {})", family.len(), bounds.lower, bounds.upper);
    println!(
        "predicted rate {:.3}, observed worst step ratio {:.3}",
        report.predicted_rate, report.asymptotic_ratio
    );
    for m in [1, 5, 10, 20, 40, 70] {
        println!("  iteration {m:>2}: relative error {:.3e}", report.errors[m - 1]);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> jitterframe::Result<()> {
    run()
}
