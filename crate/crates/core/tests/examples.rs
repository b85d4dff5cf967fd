//! Every example under `examples/` runs to completion.

#[path = "../examples/bspline_windows.rs"]
#[allow(dead_code)]
mod bspline_windows;

#[path = "../examples/certify_jitter.rs"]
#[allow(dead_code)]
mod certify_jitter;

#[path = "../examples/frame_algorithm.rs"]
#[allow(dead_code)]
mod frame_algorithm;

#[path = "../examples/frame_bounds.rs"]
#[allow(dead_code)]
mod frame_bounds;

#[path = "../examples/jitter_budget.rs"]
#[allow(dead_code)]
mod jitter_budget;

#[path = "../examples/ofdm_frequency_jitter.rs"]
#[allow(dead_code)]
mod ofdm_frequency_jitter;

#[path = "../examples/perturbation_suite.rs"]
#[allow(dead_code)]
mod perturbation_suite;

#[path = "../examples/poh_reconstruction.rs"]
#[allow(dead_code)]
mod poh_reconstruction;

#[path = "../examples/verify_certificate.rs"]
#[allow(dead_code)]
mod verify_certificate;

#[test]
fn bspline_windows() {
    bspline_windows::run().unwrap();
}

#[test]
fn certify_jitter() {
    certify_jitter::run().unwrap();
}

#[test]
fn frame_algorithm() {
    frame_algorithm::run().unwrap();
}

#[test]
fn frame_bounds() {
    frame_bounds::run().unwrap();
}

#[test]
fn jitter_budget() {
    jitter_budget::run().unwrap();
}

#[test]
fn ofdm_frequency_jitter() {
    ofdm_frequency_jitter::run().unwrap();
}

#[test]
fn perturbation_suite() {
    perturbation_suite::run().unwrap();
}

#[test]
fn poh_reconstruction() {
    poh_reconstruction::run().unwrap();
}

#[test]
fn verify_certificate() {
    verify_certificate::run().unwrap();
}
