//! Acceptance suite: one line per criterion, non-zero exit on any failure
//! not listed in `KNOWN_UNATTAINABLE`.
//!
//! Runs as a plain binary (`harness = false`) so the report is printed by
//! `cargo test` without `--nocapture`.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use jitterframe::bspline::{eval_by_recursion, fourier_sinc, BSplineWindow, DEFAULT_RECURSION_NODES};
use jitterframe::frame_bounds::{
    krein_favard_exact, numeric_periodization_extrema, periodization_bounds, snap_floor, LatticeParams,
    DEFAULT_GRID_PER_UNIT, DEFAULT_KREIN_FAVARD_TOL,
};
use jitterframe::poh::{
    hold_reconstruct, sample_with_jitter, Builtin, FnSignal, JitterRealization, NodeGrid,
};
use jitterframe::stability::{
    certify_bspline, certify_combined, certify_rect, certify_sinc, certify_tensor, JitterProfile, TensorDim,
};
use jitterframe::verifier::{
    check_plancherel, frame_reconstruct, perturbation_operator_norm_bspline, perturbation_trials,
    verify_certificate, AtomSpec, DiscreteFamily, Grid, VerifyOptions,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

/// Criteria that cannot pass as stated. They still print `[FAIL]`; the
/// binary exits non-zero only for failures outside this list, or if one of
/// these starts passing.
const KNOWN_UNATTAINABLE: &[(usize, &str)] = &[(
    2,
    "sup S_p <= floor(p/a) is false when p/a is not an integer (p=1, a=0.8 overlaps two supports on \
     (0.3, 0.5)); the library uses ceil(p/a)",
)];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    let detail = f()?;
    let took = start.elapsed();
    ensure(took <= limit, || format!("{detail}; took {took:.2?}, limit {limit:?}"))?;
    Ok(format!("{detail}; {took:.2?}"))
}

fn krein_favard() -> Check {
    timed(Duration::from_secs(1), || {
        let expected = [(1, 1.0), (2, 1.0 / 3.0), (3, 2.0 / 15.0)];
        let mut worst = 0.0f64;
        for (p, closed) in expected {
            let got = krein_favard_exact(p, DEFAULT_KREIN_FAVARD_TOL).map_err(|e| e.to_string())?;
            worst = worst.max((got.lower - closed).abs());
        }
        ensure(worst <= 1e-12, || format!("max deviation {worst:e} > 1e-12"))?;
        Ok(format!("A_1, A_2, A_3 within {worst:.1e} of 1, 1/3, 2/15 (tol 1e-12)"))
    })
}

/// Checks the sandwich exactly as stated, with the upper bound `floor(p/a)`,
/// and separately the library's `periodization_bounds` (which counts overlaps with
/// `ceil(p/a)`) for `b = 1/a` and `b < 1/a`.
fn periodization_sandwich() -> Check {
    let tol = 1e-9;
    let mut cases = 0;
    let mut floor_violations = Vec::new();
    for p in 1..=6i64 {
        let w = BSplineWindow::new(p).map_err(|e| e.to_string())?;
        let mut steps = vec![0.5, 0.8, 1.0];
        if p >= 2 {
            steps.push(1.5);
        }
        for a in steps {
            let ext =
                numeric_periodization_extrema(&w, a, DEFAULT_GRID_PER_UNIT).map_err(|e| e.to_string())?;
            cases += 1;
            let lower = w.eval(a / 2.0).powi(2);
            ensure(lower <= ext.inf + tol, || format!("p={p}, a={a}: inf {} below {lower}", ext.inf))?;
            let floor = snap_floor(p as f64 / a);
            if ext.sup > floor + tol {
                floor_violations.push(format!("p={p}, a={a}: sup S = {} > floor(p/a) = {floor}", ext.sup));
            }
            for b in [1.0 / a, 0.7 / a] {
                let lat = LatticeParams::new(a, b).map_err(|e| e.to_string())?;
                let bounds = periodization_bounds(p, lat).map_err(|e| e.to_string())?;
                let (inf, sup) = (ext.inf / b, ext.sup / b);
                ensure(bounds.lower <= inf + tol && sup <= bounds.upper + tol, || {
                    format!(
                        "p={p}, a={a}, b={b}: library bounds [{}, {}] miss [{inf}, {sup}]",
                        bounds.lower, bounds.upper
                    )
                })?;
            }
            if a == 1.0 {
                let exact = krein_favard_exact(p, DEFAULT_KREIN_FAVARD_TOL).map_err(|e| e.to_string())?;
                ensure(exact.lower <= ext.inf + tol && ext.sup <= 1.0 + tol, || {
                    format!("p={p}, a=b=1: exact A {} vs inf {}, sup {}", exact.lower, ext.inf, ext.sup)
                })?;
            }
        }
    }
    ensure(floor_violations.is_empty(), || {
        format!(
            "{}; lower bounds, exact a=b=1 bounds and library ceil(p/a) bounds hold on all {cases} cases",
            floor_violations.join("; ")
        )
    })?;
    Ok(format!("{cases} (p, a) cases, b in {{1/a, 0.7/a}}, tol {tol:e}"))
}

fn perturbation_inequality() -> Check {
    let r = perturbation_trials(1000, 20_240_601);
    ensure(r.conservative_violations.is_empty(), || {
        format!("{} violations of the conservative constant", r.conservative_violations.len())
    })?;
    Ok(format!(
        "{} trials ({} gap case): {} statement-constant violations, 0 conservative; tightest unviolated: {}",
        r.trials,
        r.gap_case_trials,
        r.statement_violations.len(),
        r.tightest_unviolated
    ))
}

fn rect_spectral_check() -> Check {
    timed(Duration::from_secs(30), || {
        let cert =
            certify_rect(LatticeParams::new(1.0, 1.0).unwrap(), &JitterProfile::single_row(0.0625).unwrap())
                .map_err(|e| e.to_string())?;
        let opts = VerifyOptions { tol: 1e-6, max_atoms: 289, ..Default::default() };
        let r = verify_certificate(&cert, &opts).map_err(|e| e.to_string())?;
        ensure(r.passed, || format!("falsified: {:?}", r.falsifications))?;
        ensure(r.subfamily_checks.iter().all(|c| c.atoms <= 289), || "subfamily above 289 atoms".into())?;
        Ok(format!(
            "{} subfamilies, spectra within [{:.4}, {:.4}] ⊂ [0.25 - 1e-6, 2.25 + 1e-6]",
            r.subfamily_checks.len(),
            r.observed_lower,
            r.observed_upper
        ))
    })
}

fn operator_norm_bound() -> Check {
    let lat = LatticeParams::new(1.0, 1.0).unwrap();
    let l = 0.0625;
    let bound = 4.0 * lat.a * l;
    let mut worst = Vec::new();
    for p in 1..=3 {
        let n = perturbation_operator_norm_bspline(p, lat, &JitterProfile::single_row(l).unwrap(), 200, 17)
            .map_err(|e| e.to_string())?;
        ensure(n <= bound + 1e-10, || format!("p={p}: {n} > 4aL = {bound}"))?;
        worst.push(format!("{n:.5}"));
    }
    Ok(format!("max norms² for p=1,2,3: {} <= 4aL = {bound} (tol 1e-10, 200 trials each)", worst.join(", ")))
}

fn reductions() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for draw in 0..100 {
        let p = rng.random_range(1..=6i64);
        let a = if p == 1 { rng.random_range(0.2..=1.0) } else { rng.random_range(0.2..(p as f64).min(3.0)) };
        let b = rng.random_range(0.1..=1.0 / a);
        let lat = LatticeParams::new(a, b).map_err(|e| e.to_string())?;
        let l = rng.random_range(0.0..0.5);
        let ell = rng.random_range(0.0..0.25);
        let jit = JitterProfile::single_row(l).unwrap();
        let mut both = jit.clone();
        both.set_ell(ell).unwrap();
        let err = |e: jitterframe::Error| e.to_string();

        let rect = certify_rect(lat, &jit).ok();
        let b1 = if a <= 1.0 { Some(certify_bspline(1, lat, &jit).map_err(err)?) } else { None };
        if let (Some(r), Some(b1)) = (&rect, &b1) {
            ensure(r.same_bounds(b1), || format!("draw {draw}: bspline(1) != rect"))?;
            let t = certify_tensor(&[TensorDim { a, b, l }]).map_err(err)?;
            ensure(t.same_bounds(r), || format!("draw {draw}: tensor(d=1) != rect"))?;
        }
        let bp = certify_bspline(p, lat, &jit).map_err(err)?;
        let c0 = certify_combined(p, lat, &jit).map_err(err)?;
        ensure(c0.same_bounds(&bp), || format!("draw {draw}: combined(ell=0) != bspline"))?;
        let c = certify_combined(p, lat, &both).map_err(err)?;
        let s = certify_sinc(p, lat, &both).map_err(err)?;
        ensure(s.same_bounds(&c), || format!("draw {draw}: sinc != combined"))?;
    }
    Ok("100 random draws, exact field equality for all four identities".into())
}

fn frame_algorithm() -> Check {
    let cert =
        certify_rect(LatticeParams::new(1.0, 1.0).unwrap(), &JitterProfile::single_row(0.0625).unwrap())
            .map_err(|e| e.to_string())?;
    let bounds = cert.absolute_bounds.unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(70);
    let offsets: BTreeMap<i64, f64> = (-20..=20).map(|k| (k, rng.random_range(-0.0625..=0.0625))).collect();
    let grid = Grid::covering(-20.5, 20.5, 32).map_err(|e| e.to_string())?;
    let family = DiscreteFamily::complete_rect_family(grid, -20..=20, |n, k| {
        k as f64 + if n == 0 { offsets[&k] } else { 0.0 }
    })
    .map_err(|e| e.to_string())?;
    let mut lines = Vec::new();
    for signal in Builtin::ALL {
        let f: Vec<Complex64> =
            (0..grid.len).map(|j| Complex64::new(signal.eval(grid.point(j)), 0.0)).collect();
        let (_, r) = frame_reconstruct(&family.analysis(&f), &family, &bounds, 70, Some(&f))
            .map_err(|e| e.to_string())?;
        let last = *r.errors.last().unwrap();
        ensure(r.asymptotic_ratio <= 0.82 && last < 1e-6, || {
            format!("{signal}: ratio {} (limit 0.82), final error {last:e}", r.asymptotic_ratio)
        })?;
        lines.push(format!("{signal} ratio {:.3} error {last:.1e}", r.asymptotic_ratio));
    }
    Ok(format!("{} (limits 0.82, 1e-6 at 70 iterations)", lines.join("; ")))
}

fn hold_exactness() -> Check {
    let none = JitterRealization::uniform(1.0, 0.0, 0).unwrap();
    let stairs = sample_with_jitter(&Builtin::Staircase, &none, -16..=16).map_err(|e| e.to_string())?;
    let centers = hold_reconstruct(&stairs, 1, 1.0, NodeGrid::spanning(-16.0, 16.0, 1).unwrap())
        .map_err(|e| e.to_string())?;
    for (s, v) in stairs.iter().zip(&centers.samples) {
        ensure(*v == s.value, || format!("staircase at n = {}: {v} != {}", s.n, s.value))?;
    }
    let line = FnSignal::new("linear", |t| 0.75 * t - 2.0);
    let samples = sample_with_jitter(&line, &none, -16..=16).map_err(|e| e.to_string())?;
    let out = hold_reconstruct(&samples, 2, 1.0, NodeGrid::spanning(-15.0, 15.0, 64).unwrap())
        .map_err(|e| e.to_string())?;
    let worst = out
        .grid()
        .nodes()
        .zip(&out.samples)
        .map(|(t, v)| (v - (0.75 * t - 2.0)).abs())
        .fold(0.0f64, f64::max);
    ensure(worst <= 1e-10, || format!("linear reproduction error {worst:e}"))?;
    Ok(format!("staircase exact at 33 cell centres; linear error {worst:.1e} (tol 1e-10)"))
}

fn plancherel() -> Check {
    let mut lines = Vec::new();
    for p in 1..=2 {
        let w = Arc::new(BSplineWindow::new(p).unwrap());
        let atoms: Vec<AtomSpec> = (0..5)
            .flat_map(|n| {
                let w = w.clone();
                (0..5).map(move |k| AtomSpec::new(0.5 * n as f64 - 1.0, 0.75 * k as f64 - 1.5, w.clone()))
            })
            .collect();
        let r = check_plancherel(&atoms, 64.0, 1e-4);
        ensure(r.passed, || format!("p={p}: max entry difference {}", r.max_entry_difference))?;
        lines.push(format!("p={p} max diff {:.1e}", r.max_entry_difference));
    }
    Ok(format!("5x5 (frequency x shift) families: {} (tol 1e-4)", lines.join(", ")))
}

fn bspline_core() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for p in 1..=8i64 {
        let w = BSplineWindow::new(p).unwrap();
        let h = w.half_support();
        for _ in 0..200 {
            let x = rng.random_range(-h - 0.5..h + 0.5);
            ensure((w.eval(x) - w.eval(-x)).abs() <= 1e-14, || format!("p={p}: symmetry at {x}"))?;
            let y = rng.random_range(-0.5..=0.5);
            let pu: f64 = (-p..=p).map(|k| w.eval(y - k as f64)).sum();
            ensure((pu - 1.0).abs() <= 1e-12, || format!("p={p}: partition of unity {pu} at {y}"))?;
            let xi = rng.random_range(-3.0..3.0);
            let ft = w.oscillatory_integral(2.0 * std::f64::consts::PI * xi, -h, h);
            ensure((ft.re - fourier_sinc(p as u32, xi)).abs() <= 1e-10 && ft.im.abs() <= 1e-10, || {
                format!("p={p}: transform at {xi}")
            })?;
        }
        let mass = w.oscillatory_integral(0.0, -h, h);
        ensure((mass.re - 1.0).abs() <= 1e-12, || format!("p={p}: mass {mass}"))?;
        // non-increasing on [0, ∞), 10^3 points per piece
        let mut prev = w.eval(0.0);
        let steps = (h * 1000.0).ceil() as usize * 2;
        for i in 1..=steps {
            let v = w.eval(i as f64 * h / steps as f64);
            ensure(v <= prev + 1e-15, || {
                format!("p={p}: not monotone near {}", i as f64 * h / steps as f64)
            })?;
            prev = v;
        }
        if p <= 6 {
            for _ in 0..100 {
                let x = rng.random_range(-h..h);
                let r = eval_by_recursion(p, x, DEFAULT_RECURSION_NODES).map_err(|e| e.to_string())?;
                ensure((r - w.eval(x)).abs() <= 1e-8, || format!("p={p}: recursion oracle at {x}"))?;
            }
        }
    }
    Ok("symmetry 1e-14, partition of unity 1e-12, unit mass 1e-12, transform 1e-10, monotone, oracle 1e-8 (p <= 6)".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("Krein-Favard exactness", krein_favard),
        ("periodization sandwich", periodization_sandwich),
        ("exponential-sum perturbation inequality", perturbation_inequality),
        ("jittered rect spectral check", rect_spectral_check),
        ("B-spline perturbation operator norm", operator_norm_bound),
        ("certificate reduction identities", reductions),
        ("frame-algorithm convergence", frame_algorithm),
        ("hold exactness", hold_exactness),
        ("Plancherel duality", plancherel),
        ("B-spline core invariants", bspline_core),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("[PASS] {:>2}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed.push(i + 1);
                println!("[FAIL] {:>2}. {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed.len(), criteria.len());
    let unexpected: Vec<_> =
        failed.iter().filter(|n| !KNOWN_UNATTAINABLE.iter().any(|(k, _)| k == *n)).collect();
    for (n, why) in KNOWN_UNATTAINABLE {
        if failed.contains(n) {
            println!("known red: {n}. {why}");
        } else {
            println!("known red {n} now passes; remove it from KNOWN_UNATTAINABLE");
        }
    }
    if !unexpected.is_empty() || KNOWN_UNATTAINABLE.iter().any(|(n, _)| !failed.contains(n)) {
        std::process::exit(1);
    }
}
