//! Stability certificates for time- and frequency-jittered Gabor systems.

use std::collections::BTreeMap;

use jitterframe::frame_bounds::{LatticeParams, SobolevWindow};
use jitterframe::stability::{
    certify_bspline, certify_combined, certify_rect, certify_sinc, certify_sobolev, certify_tensor,
    Certificate, JitterProfile, TensorDim,
};

fn show(name: &str, c: &Certificate) {
    match (&c.relative_factors, &c.absolute_bounds) {
        (Some(f), Some(b)) => println!(
            "{name:<28} {:.4} < {:.4}  factors ({:.4}, {:.4})  bounds ({:.4}, {:.4}){}",
            c.condition_lhs,
            c.condition_rhs,
            f.lower,
            f.upper,
            b.lower,
            b.upper,
            if c.riesz { "  riesz" } else { "" }
        ),
        _ => println!("{name:<28} {:.4} >= {:.4}  not certified", c.condition_lhs, c.condition_rhs),
    }
}

pub fn run() -> jitterframe::Result<()> {
    let unit = LatticeParams::new(1.0, 1.0)?;
    let quarter = JitterProfile::single_row(0.0625)?;
    show("rect, L = 1/16", &certify_rect(unit, &quarter)?);
    show("rect, L = 0.3", &certify_rect(unit, &JitterProfile::single_row(0.3)?)?);
    show(
        "rect^(3), a=1, b=1/3",
        &certify_bspline(3, LatticeParams::new(1.0, 1.0 / 3.0)?, &JitterProfile::single_row(0.05)?)?,
    );

    // jitter spread over several rows counts through its sum
    let spread = JitterProfile::new(BTreeMap::from([(-1, 0.02), (0, 0.03), (1, 0.0125)]), 0.0)?;
    show("rect, three rows", &certify_rect(unit, &spread)?);

    let mut both = JitterProfile::single_row(1.0 / 32.0)?;
    both.set_ell(0.125)?;
    show("rect, L=1/32, ell=1/8", &certify_combined(1, unit, &both)?);
    show("sinc side of the same", &certify_sinc(1, unit, &both)?);

    let cos = SobolevWindow::cosine(4.0, 1.0)?;
    show("cosine window, L_0 = 0.1", &certify_sobolev(&cos, unit, &JitterProfile::single_row(0.1)?)?);

    let d = TensorDim { a: 1.0, b: 1.0, l: 0.0625 };
    show("2-D rect, L = 1/16 each", &certify_tensor(&[d.clone(), d])?);

    println!("\ncertificate JSON:\n{}", serde_json::to_string_pretty(&certify_rect(unit, &quarter)?)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> jitterframe::Result<()> {
    run()
}
