//! Zero- and first-order holds of jittered samples versus the frame algorithm.

use jitterframe::poh::{hold_output, reconstruction_experiment, Builtin, ExperimentConfig};

pub fn run() -> jitterframe::Result<()> {
    println!("signal     p  eps   hold error   frame error  certified");
    for signal in Builtin::ALL {
        for (p, eps) in [(1, 0.0), (1, 0.1), (2, 0.1), (1, 0.3)] {
            let cfg = ExperimentConfig { p, eps, seed: 7, ..Default::default() };
            let r = reconstruction_experiment(&signal, &cfg)?;
            println!(
                "{:<10} {p}  {eps:.1}  {:.3e}    {}    {}",
                r.signal,
                r.hold_error,
                r.frame.error.map_or("-".into(), |e| format!("{e:.3e}")),
                r.certified
            );
        }
    }

    let cfg = ExperimentConfig { p: 2, eps: 0.1, seed: 7, n_min: -8, n_max: 8, ..Default::default() };
    let held = hold_output(&Builtin::Chirp, &cfg)?;
    let path = std::env::temp_dir().join("jitterframe_hold.csv");
    held.write_csv(std::fs::File::create(&path)?)?;
    println!("\nfirst-order hold of the chirp written to {}", path.display());
    Ok(())
}

#[allow(dead_code)]
fn main() -> jitterframe::Result<()> {
    run()
}
