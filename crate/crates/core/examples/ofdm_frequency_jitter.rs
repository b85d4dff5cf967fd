//! OFDM carriers with frequency jitter.
//!
//! An OFDM symbol stream is `Σ_{n<N} Σ_k α_{n,k} rect(t - k) e^{2πiλ_n t}`
//! with carriers `λ_n = n + ε_n`. Replacing the rows `n = 0..N` of the
//! orthonormal system `{e^{2πint} rect(t - k)}` by the jittered carriers keeps
//! a Riesz basis while `|ε_n| < 1/4`; the certificate below gives its bounds,
//! and the Gram matrix of a finite section shows the actual spread.

use std::sync::Arc;

use jitterframe::bspline::BSplineWindow;
use jitterframe::frame_bounds::LatticeParams;
use jitterframe::stability::{certify_combined, JitterProfile};
use jitterframe::verifier::{gram_matrix, gram_spectrum_extrema, AtomSpec, DEFAULT_SPECTRUM_TOL};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn run() -> jitterframe::Result<()> {
    let carriers = 8;
    let rect = Arc::new(BSplineWindow::new(1)?);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for ell in [0.05, 0.1, 0.2, 0.24] {
        let mut jit = JitterProfile::default();
        jit.set_ell(ell)?;
        let cert = certify_combined(1, LatticeParams::new(1.0, 1.0)?, &jit)?;
        let bounds = cert.absolute_bounds.expect("certified below 1/4");

        let offsets: Vec<f64> = (0..carriers).map(|_| rng.random_range(-ell..=ell)).collect();
        let mut atoms = Vec::new();
        for k in -6..=6 {
            for n in -4..carriers as i64 + 4 {
                let freq =
                    if (0..carriers as i64).contains(&n) { n as f64 + offsets[n as usize] } else { n as f64 };
                atoms.push(AtomSpec::new(freq, k as f64, rect.clone()));
            }
        }
        let spec = gram_spectrum_extrema(&gram_matrix(&atoms), DEFAULT_SPECTRUM_TOL)?;
        println!(
            "ell = {ell:.2}: certified [{:.4}, {:.4}], finite section [{:.4}, {:.4}] over {} atoms",
            bounds.lower,
            bounds.upper,
            spec.min,
            spec.max,
            atoms.len()
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> jitterframe::Result<()> {
    run()
}
