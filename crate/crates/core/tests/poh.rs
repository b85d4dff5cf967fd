//! p-order hold under jitter: sampling and hold examples, the statistical
//! growth of hold error with jitter, budget round trips, reproducibility.

use std::collections::BTreeMap;

use jitterframe::frame_bounds::LatticeParams;
use jitterframe::poh::{
    budget_certificate, hold_reconstruct, jitter_budget, reconstruction_experiment, sample_with_jitter,
    BoundsSource, BudgetTarget, Builtin, ExperimentConfig, FnSignal, JitterModel, JitterRealization,
    NodeGrid, SignalSource, BUDGET_GUARD,
};
use proptest::prelude::*;

#[test]
fn sampling_examples() {
    let id = FnSignal::new("identity", |t: f64| t);
    let still = JitterRealization::uniform(0.5, 0.0, 9).unwrap();
    for s in sample_with_jitter(&id, &still, -4..=4).unwrap() {
        assert_eq!(s.position, 0.5 * s.n as f64);
    }

    let one = FnSignal::new("one", |_| 1.0);
    let shaky = JitterRealization::uniform(1.0, 0.4, 9).unwrap();
    assert!(sample_with_jitter(&one, &shaky, -20..=20).unwrap().iter().all(|s| s.value == 1.0));

    let fixed =
        JitterRealization::fixed(1.0, (-5..=5).map(|n| (n, 0.1)).collect::<BTreeMap<_, _>>()).unwrap();
    for s in sample_with_jitter(&id, &fixed, -5..=5).unwrap() {
        assert!((s.value - (s.n as f64 + 0.1)).abs() < 1e-15);
    }
}

#[test]
fn single_impulse_holds_to_the_unit_rectangle() {
    let impulse = FnSignal::new("impulse", |t: f64| if t == 0.0 { 1.0 } else { 0.0 });
    let jit = JitterRealization::uniform(1.0, 0.0, 0).unwrap();
    let samples = sample_with_jitter(&impulse, &jit, -3..=3).unwrap();
    let grid = NodeGrid::spanning(-2.0, 2.0, 50).unwrap();
    let held = hold_reconstruct(&samples, 1, 1.0, grid).unwrap();
    for (t, v) in grid.nodes().zip(&held.samples) {
        let expected = if (-0.5..0.5).contains(&t) { 1.0 } else { 0.0 };
        assert_eq!(*v, expected, "t = {t}");
    }
}

/// Relative L² error of the hold on the interior, computed on a fine grid.
fn hold_error(f: &dyn SignalSource, p: i64, eps: f64, seed: u64) -> f64 {
    let jit = JitterRealization::uniform(1.0, eps, seed).unwrap();
    let samples = sample_with_jitter(f, &jit, -24..=24).unwrap();
    let trim = p as f64 + eps;
    let grid = NodeGrid::spanning(-24.0 + trim, 24.0 - trim, 40).unwrap();
    let held = hold_reconstruct(&samples, p, 1.0, grid).unwrap();
    let (mut num, mut den) = (0.0, 0.0);
    for (t, h) in grid.nodes().zip(&held.samples) {
        let v = f.value(t).unwrap();
        num += (h - v) * (h - v);
        den += v * v;
    }
    (num / den).sqrt()
}

/// `P(X ≥ k)` for `X ~ Binomial(n, 1/2)`.
fn binomial_upper_tail(n: u64, k: u64) -> f64 {
    let mut total = 0.0;
    let mut c = 1.0f64;
    for i in 0..=n {
        if i >= k {
            total += c;
        }
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    total / 2f64.powi(n as i32)
}

#[test]
fn binomial_tail_oracle() {
    assert!((binomial_upper_tail(4, 3) - 5.0 / 16.0).abs() < 1e-15);
    assert!(binomial_upper_tail(50, 32) < 0.05 && binomial_upper_tail(50, 31) > 0.05);
}

#[test]
fn hold_error_grows_with_jitter() {
    const SEEDS: u64 = 50;
    for (signal, p) in [(Builtin::Chirp, 1), (Builtin::Gaussian, 2), (Builtin::Chirp, 3)] {
        for (lo, hi) in [(0.02, 0.1), (0.1, 0.2)] {
            let grew = (0..SEEDS)
                .filter(|&seed| hold_error(&signal, p, hi, seed) >= hold_error(&signal, p, lo, seed))
                .count() as u64;
            let p_value = binomial_upper_tail(SEEDS, grew);
            assert!(
                p_value < 0.05,
                "{signal} p={p} eps {lo} -> {hi}: {grew}/{SEEDS} grew (p = {p_value:.3})"
            );
        }
    }
}

#[test]
fn experiment_is_reproducible() {
    let cfg = ExperimentConfig { eps: 0.15, seed: 21, n_min: -16, n_max: 16, ..Default::default() };
    let a = serde_json::to_string(&reconstruction_experiment(&Builtin::Gaussian, &cfg).unwrap()).unwrap();
    let b = serde_json::to_string(&reconstruction_experiment(&Builtin::Gaussian, &cfg).unwrap()).unwrap();
    assert_eq!(a, b);
    let other = ExperimentConfig { seed: 22, ..cfg };
    let c = serde_json::to_string(&reconstruction_experiment(&Builtin::Gaussian, &other).unwrap()).unwrap();
    assert_ne!(a, c);
}

#[test]
fn above_budget_runs_uncertified() {
    let cfg = ExperimentConfig { eps: 0.3, seed: 4, n_min: -16, n_max: 16, ..Default::default() };
    let r = reconstruction_experiment(&Builtin::Chirp, &cfg).unwrap();
    assert!(!r.certified);
    assert!(r.note.as_deref().unwrap_or("").contains("no certificate"));
    assert_eq!(r.frame.bounds_source, BoundsSource::Estimate);
    assert!(r.hold_error.is_finite());
}

fn lattice() -> impl Strategy<Value = (i64, f64, f64)> {
    (1i64..=4, 0.05f64..1.0, 0.05f64..1.0).prop_map(|(p, sa, sb)| {
        let a = if p == 1 { sa } else { sa * p as f64 };
        (p, a, sb / a)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn budget_round_trips((p, a, b) in lattice(), period in 0.01f64..10.0, total in any::<bool>()) {
        let lat = LatticeParams::new(a, b).unwrap();
        let model = if total { JitterModel::TotalL } else { JitterModel::SingleRow };
        let r = jitter_budget(p, period, lat, model, BudgetTarget::Frame).unwrap();
        prop_assert!((r.budget_time - r.budget * period).abs() <= 1e-15 * period);
        if r.budget > 0.0 {
            prop_assert!(budget_certificate(p, lat, r.budget).unwrap().satisfied);
            let over = r.budget + 2.0 * BUDGET_GUARD;
            if over < 1.0 {
                prop_assert!(!budget_certificate(p, lat, over).unwrap().satisfied);
            }
        } else {
            prop_assert!(r.diagnostic.is_some());
        }
    }

    #[test]
    fn budget_shrinks_for_smoother_holds((_, a, b) in lattice()) {
        let a = a.min(1.0);
        let lat = LatticeParams::new(a, b).unwrap();
        let mut last = f64::INFINITY;
        for p in 1..=4 {
            let r = jitter_budget(p, 1.0, lat, JitterModel::TotalL, BudgetTarget::Frame).unwrap();
            prop_assert!(r.supremum <= last * (1.0 + 1e-12));
            last = r.supremum;
        }
    }
}
