//! How much timing jitter each hold order tolerates.

use jitterframe::frame_bounds::LatticeParams;
use jitterframe::poh::{jitter_budget, BudgetTarget, JitterModel};

pub fn run() -> jitterframe::Result<()> {
    let unit = LatticeParams::new(1.0, 1.0)?;
    for model in [JitterModel::SingleRow, JitterModel::TotalL] {
        for p in 1..=4 {
            let b = jitter_budget(p, 1e-3, unit, model, BudgetTarget::Frame)?;
            println!("{model:<10} p = {p}: L < {:.9} ({:.3} us at T = 1 ms)", b.budget, b.budget_time * 1e6);
        }
    }
    // denser lattices leave more room
    for (a, b) in [(1.0, 0.5), (0.5, 1.0), (0.5, 0.5)] {
        let r = jitter_budget(1, 1.0, LatticeParams::new(a, b)?, JitterModel::TotalL, BudgetTarget::Frame)?;
        println!("rect, a = {a}, b = {b}: L < {:.9}", r.budget);
    }
    let r = jitter_budget(1, 1.0, LatticeParams::new(0.5, 1.0)?, JitterModel::TotalL, BudgetTarget::Riesz)?;
    println!("riesz target at ab = 1/2: {} ({})", r.budget, r.diagnostic.unwrap_or_default());
    Ok(())
}

#[allow(dead_code)]
fn main() -> jitterframe::Result<()> {
    run()
}
