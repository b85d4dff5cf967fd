use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::signal::SignalSource;
use crate::error::{Error, Result};

/// How offsets without an explicit value are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JitterDistribution {
    /// Uniform on `[-ε, ε]`.
    #[default]
    Uniform,
    /// `±ε` with random sign.
    WorstCase,
    /// Nothing is drawn; offsets not listed explicitly are zero.
    Explicit,
}

/// Timing offsets `ε_n` of the sample instants `T(n + ε_n)`.
///
/// Offsets listed in `epsilons` are used as given; unless the distribution
/// is `Explicit`, every other `n` gets a value drawn from a ChaCha8 stream keyed by `(seed, n)`. Because each draw
/// is `ε` times a seed-dependent unit variate, realizations with the same seed
/// and different bounds are scaled copies of one another.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JitterRealization {
    #[serde(rename = "T")]
    period: f64,
    bound: f64,
    seed: u64,
    #[serde(default)]
    distribution: JitterDistribution,
    #[serde(default)]
    epsilons: BTreeMap<i64, f64>,
}

/// One held sample: nominal index, actual instant `T μ_n` and value there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JitteredSample {
    pub n: i64,
    pub epsilon: f64,
    pub position: f64,
    pub value: f64,
}

impl JitterRealization {
    pub fn new(period: f64, bound: f64, seed: u64, distribution: JitterDistribution) -> Result<Self> {
        if !(period > 0.0 && period.is_finite()) {
            return Err(Error::InvalidInput(format!("sampling period T = {period} must be positive")));
        }
        if !(bound >= 0.0 && bound.is_finite()) {
            return Err(Error::InvalidInput(format!("jitter bound {bound} must be finite and non-negative")));
        }
        Ok(JitterRealization { period, bound, seed, distribution, epsilons: BTreeMap::new() })
    }

    pub fn uniform(period: f64, bound: f64, seed: u64) -> Result<Self> {
        Self::new(period, bound, seed, JitterDistribution::Uniform)
    }

    pub fn worst_case(period: f64, bound: f64, seed: u64) -> Result<Self> {
        Self::new(period, bound, seed, JitterDistribution::WorstCase)
    }

    /// Only the given offsets; the bound is their largest magnitude and every
    /// other index is unjittered.
    pub fn fixed(period: f64, epsilons: BTreeMap<i64, f64>) -> Result<Self> {
        let bound = epsilons.values().fold(0.0f64, |m, e| m.max(e.abs()));
        let mut j = Self::new(period, bound, 0, JitterDistribution::Explicit)?;
        j.epsilons = epsilons;
        Ok(j)
    }

    /// Pins `ε_n`; fails if `|ε_n|` exceeds the bound.
    pub fn set(&mut self, n: i64, eps: f64) -> Result<()> {
        if !(eps.abs() <= self.bound) {
            return Err(Error::InvalidInput(format!(
                "offset ε_{n} = {eps} exceeds the jitter bound {}",
                self.bound
            )));
        }
        self.epsilons.insert(n, eps);
        Ok(())
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn bound(&self) -> f64 {
        self.bound
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn distribution(&self) -> JitterDistribution {
        self.distribution
    }

    pub fn explicit(&self) -> &BTreeMap<i64, f64> {
        &self.epsilons
    }

    pub fn epsilon(&self, n: i64) -> f64 {
        if let Some(&e) = self.epsilons.get(&n) {
            return e;
        }
        if self.bound == 0.0 || self.distribution == JitterDistribution::Explicit {
            return 0.0;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(n as u64);
        match self.distribution {
            JitterDistribution::Uniform => self.bound * rng.random_range(-1.0..=1.0),
            JitterDistribution::WorstCase => {
                if rng.random::<bool>() {
                    self.bound
                } else {
                    -self.bound
                }
            }
            JitterDistribution::Explicit => unreachable!(),
        }
    }

    /// `μ_n = n + ε_n`.
    pub fn mu(&self, n: i64) -> f64 {
        n as f64 + self.epsilon(n)
    }
}

/// Samples `f(T(n + ε_n))` for `n` in `n_range`.
pub fn sample_with_jitter(
    f: &dyn SignalSource,
    jit: &JitterRealization,
    n_range: RangeInclusive<i64>,
) -> Result<Vec<JitteredSample>> {
    if n_range.is_empty() {
        return Err(Error::InvalidInput("sample index range is empty".into()));
    }
    n_range
        .map(|n| {
            let epsilon = jit.epsilon(n);
            let position = jit.period * (n as f64 + epsilon);
            Ok(JitteredSample { n, epsilon, position, value: f.value(position)? })
        })
        .collect()
}
