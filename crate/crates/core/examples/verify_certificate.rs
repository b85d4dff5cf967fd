//! Checking certificates against the spectra of finite sections.

use jitterframe::frame_bounds::LatticeParams;
use jitterframe::stability::{certify_bspline, certify_rect, JitterProfile};
use jitterframe::verifier::{verify_certificate, VerificationReport, VerifyOptions};

fn show(name: &str, r: &VerificationReport) {
    println!(
        "{name:<34} {:<18} observed [{:.4}, {:.4}] claimed [{:.4}, {:.4}] -> {}",
        r.mode,
        r.observed_lower,
        r.observed_upper,
        r.claimed_lower,
        r.claimed_upper,
        if r.passed { "pass" } else { "FALSIFIED" }
    );
    for f in r.falsifications.iter().take(1) {
        println!("    {f}");
    }
}

pub fn run() -> jitterframe::Result<()> {
    let opts = VerifyOptions { seed: 1, ..Default::default() };
    let unit = LatticeParams::new(1.0, 1.0)?;
    let cert = certify_rect(unit, &JitterProfile::single_row(0.0625)?)?;
    show("rect, L = 1/16", &verify_certificate(&cert, &opts)?);

    // negative control: claim a lower bound the system does not have
    let mut inflated = cert.clone();
    if let Some(b) = inflated.absolute_bounds.as_mut() {
        b.lower = 1.2;
    }
    show("rect, L = 1/16, A inflated to 1.2", &verify_certificate(&inflated, &opts)?);

    // redundant rect^(2) system whose support fits in 1/b
    let painless = certify_bspline(2, LatticeParams::new(1.0, 0.5)?, &JitterProfile::single_row(0.05)?)?;
    show("rect^(2), a = 1, b = 1/2", &verify_certificate(&painless, &opts)?);

    // support 2 > 1/b: the periodization lower bound does not hold here
    let wide = certify_bspline(2, unit, &JitterProfile::default())?;
    show("rect^(2), a = b = 1", &verify_certificate(&wide, &opts)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> jitterframe::Result<()> {
    run()
}
