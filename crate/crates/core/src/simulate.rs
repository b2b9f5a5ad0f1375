//! Stationary sample paths and their increments on a `delta`-grid.

use alloc::vec;
use alloc::vec::Vec;

use libm::{ceil, floor};

use crate::error::{ensure_positive, Error, Result};
use crate::model::{JumpMixture, RenewalModel};
use crate::rng;

/// One path of `X_t = sum_{i <= R_t} xi_i` over `(0, horizon]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplePath {
    pub jump_times: Vec<f64>,
    pub jump_sizes: Vec<f64>,
    pub horizon: f64,
    pub seed: u64,
}

impl SamplePath {
    /// `R_T`, the number of renewals in `(0, T]`.
    pub fn jump_count(&self) -> usize {
        self.jump_times.len()
    }

    /// Number of renewals falling in each observation window `((i-1) delta, i delta]`.
    pub fn window_counts(&self, delta: f64) -> Result<Vec<u32>> {
        let n = grid_len(self.horizon, delta)?;
        let mut counts = vec![0u32; n];
        for &t in &self.jump_times {
            if let Some(i) = window_index(t, delta, n) {
                counts[i] += 1;
            }
        }
        Ok(counts)
    }
}

/// Draws a stationary path: the first arrival from `tau0`, later gaps from
/// `tau`, marks i.i.d. from `jumps` and independent of the arrivals.
pub fn sample_path(
    model: &RenewalModel,
    jumps: &JumpMixture,
    horizon: f64,
    seed: u64,
) -> Result<SamplePath> {
    let first = |u: f64| model.sample_stationary_delay(u);
    sample_with_first_gap(model, jumps, horizon, seed, first)
}

/// Same as [`sample_path`] but with the first gap drawn from `tau`, so the
/// renewal process does not start in its stationary regime. Estimators assume
/// the stationary start; this exists for comparison in tests.
pub fn sample_path_ordinary_start(
    model: &RenewalModel,
    jumps: &JumpMixture,
    horizon: f64,
    seed: u64,
) -> Result<SamplePath> {
    let first = |u: f64| model.sample_interarrival(u);
    sample_with_first_gap(model, jumps, horizon, seed, first)
}

fn sample_with_first_gap<G: Fn(f64) -> f64>(
    model: &RenewalModel,
    jumps: &JumpMixture,
    horizon: f64,
    seed: u64,
    first_gap: G,
) -> Result<SamplePath> {
    ensure_positive("horizon", horizon)?;
    let mut stream = rng::stream(seed);
    let expected = (horizon / model.mean()) as usize;
    let mut jump_times = Vec::with_capacity(expected + expected / 8 + 16);
    let mut jump_sizes = Vec::with_capacity(jump_times.capacity());

    let mut t = first_gap(rng::unit(&mut stream));
    while t <= horizon {
        jump_times.push(t);
        let pick = rng::unit(&mut stream);
        let u = rng::open_unit(&mut stream);
        jump_sizes.push(jumps.sample(pick, u));
        t += model.sample_interarrival(rng::unit(&mut stream));
    }
    Ok(SamplePath {
        jump_times,
        jump_sizes,
        horizon,
        seed,
    })
}

/// `floor(horizon / delta)` with a relative guard against quotients such as
/// `10000 / 0.01` landing just below an integer.
pub fn grid_len(horizon: f64, delta: f64) -> Result<usize> {
    ensure_positive("delta", delta)?;
    ensure_positive("horizon", horizon)?;
    if delta > horizon {
        return Err(Error::InvalidParameter {
            name: "delta",
            value: delta,
        });
    }
    let r = horizon / delta;
    Ok(floor(r + r * 1e-12) as usize)
}

/// Zero-based window of a jump at `t`, or `None` past the last observation.
fn window_index(t: f64, delta: f64, n: usize) -> Option<usize> {
    let i = ceil(t / delta) as usize;
    if i == 0 || i > n {
        None
    } else {
        Some(i - 1)
    }
}

/// Increments `X_{i delta} - X_{(i-1) delta}` for `i = 1..=floor(T / delta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct IncrementSeries {
    delta: f64,
    values: Vec<f64>,
}

/// Nonzero increments with their one-based positions in the series.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NonzeroIncrements {
    pub indices: Vec<usize>,
    pub values: Vec<f64>,
}

impl NonzeroIncrements {
    /// `N_T`.
    pub fn count(&self) -> usize {
        self.values.len()
    }
}

impl IncrementSeries {
    pub fn new(delta: f64, values: Vec<f64>) -> Result<Self> {
        ensure_positive("delta", delta)?;
        Ok(IncrementSeries { delta, values })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Number of observed increments `n`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Observation span `n * delta`.
    pub fn span(&self) -> f64 {
        self.values.len() as f64 * self.delta
    }

    /// `N_T`. A floating-point zero counts as "no jump".
    pub fn nonzero_count(&self) -> usize {
        self.values.iter().filter(|v| **v != 0.0).count()
    }

    pub fn nonzero(&self) -> NonzeroIncrements {
        let mut out = NonzeroIncrements::default();
        for (i, &v) in self.values.iter().enumerate() {
            if v != 0.0 {
                out.indices.push(i + 1);
                out.values.push(v);
            }
        }
        out
    }
}

/// Aggregates the path's jumps into increments on the `delta`-grid.
pub fn discretize(path: &SamplePath, delta: f64) -> Result<IncrementSeries> {
    let n = grid_len(path.horizon, delta)?;
    let mut values = vec![0.0; n];
    for (&t, &x) in path.jump_times.iter().zip(&path.jump_sizes) {
        if let Some(i) = window_index(t, delta, n) {
            values[i] += x;
        }
    }
    IncrementSeries::new(delta, values)
}

/// Sums of `m` nonzero increments taken with stride `N_{T,m} = floor(N_T / m)`:
/// element `i` adds positions `i, N_{T,m} + i, ..., (m-1) N_{T,m} + i`.
///
/// Returns an empty vector when fewer than `m` values are available.
pub fn block_sums(values: &[f64], m: usize) -> Vec<f64> {
    assert!(m >= 1, "block size must be positive");
    let stride = values.len() / m;
    (0..stride)
        .map(|i| (0..m).map(|r| values[r * stride + i]).sum())
        .collect()
}
