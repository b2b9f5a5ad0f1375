use alloc::vec::Vec;

use libm::pow;

use super::inverse::correction_coeffs;
use crate::error::{ensure_positive, Error, Result};
use crate::fft;
use crate::model::RenewalModel;
use crate::quad;

/// Largest admissible tail mass `1 - sum p_m`.
pub const COUNT_TAIL_TOLERANCE: f64 = 1e-9;
pub const MAX_TRUNCATION: usize = 64;

/// `p_m(delta) = P(R_delta = m | R_delta != 0)` for `m = 1..=truncation`.
///
/// `P(R_delta = m) = P(T_m <= delta) - P(T_{m+1} <= delta)` where the density
/// of `T_m = J_1 + ... + J_m` is `tau0 * tau^{*(m-1)}`, built by repeated
/// trapezoid convolution on `[0, delta]` with `model.quadrature_steps()` intervals.
pub fn count_probs(model: &RenewalModel, delta: f64, truncation: usize) -> Result<Vec<f64>> {
    ensure_positive("delta", delta)?;
    if truncation == 0 {
        return Err(Error::InvalidParameter {
            name: "truncation",
            value: 0.0,
        });
    }
    let n = model.quadrature_steps();
    let h = delta / n as f64;
    let tau: Vec<f64> = (0..=n)
        .map(|i| model.interarrival_pdf(i as f64 * h))
        .collect();
    let mut density: Vec<f64> = (0..=n)
        .map(|i| model.stationary_delay_pdf(i as f64 * h))
        .collect();
    if tau.iter().chain(&density).any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "delta",
            value: delta,
        });
    }

    // arrival_cdf[m-1] = P(T_m <= delta)
    let mut arrival_cdf = Vec::with_capacity(truncation + 1);
    arrival_cdf.push(quad::trapezoid_samples(&density, h));
    for _ in 0..truncation {
        density = convolve_trapezoid(&density, &tau, h);
        arrival_cdf.push(quad::trapezoid_samples(&density, h));
    }
    let q = arrival_cdf[0];
    let tail = arrival_cdf[truncation] / q;
    if tail > COUNT_TAIL_TOLERANCE {
        return Err(Error::TruncationTooShort { truncation, tail });
    }
    Ok(arrival_cdf.windows(2).map(|w| (w[0] - w[1]) / q).collect())
}

/// `(a * b)(x_i) = integral_0^{x_i} a(x_i - u) b(u) du` by the trapezoid rule
/// on the shared grid `x_i = i h`.
fn convolve_trapezoid(a: &[f64], b: &[f64], h: f64) -> Vec<f64> {
    let full = fft::convolve(a, b);
    (0..a.len())
        .map(|i| h * (full[i] - 0.5 * a[i] * b[0] - 0.5 * a[0] * b[i]))
        .collect()
}

/// Smallest `M` with `sum_{m > M} 2 (2 tau(0) delta)^(m-1) / m! < 1e-12`,
/// capped at [`MAX_TRUNCATION`].
pub fn default_truncation(model: &RenewalModel, delta: f64) -> usize {
    let x = 2.0 * model.tau_at_zero() * delta;
    let term = |m: usize| -> f64 {
        let mut t = 2.0;
        for k in 1..=m {
            t *= if k < m { x / k as f64 } else { 1.0 / k as f64 };
        }
        t
    };
    for big_m in 1..MAX_TRUNCATION {
        let tail: f64 = (big_m + 1..big_m + 200).map(term).sum();
        if tail < 1e-12 {
            return big_m;
        }
    }
    MAX_TRUNCATION
}

/// Small-window bounds on the count probabilities: `p_1 >= 1 - 2 tau(0) delta`
/// and `p_m <= 2 (2 tau(0))^(m-1) delta^(m-1) / m!`, valid for
/// `delta <= model.small_window_limit()`.
pub fn count_bound(model: &RenewalModel, delta: f64, m: usize) -> f64 {
    let x = 2.0 * model.tau_at_zero() * delta;
    let mut fact = 1.0;
    for k in 2..=m {
        fact *= k as f64;
    }
    2.0 * pow(x, (m - 1) as f64) / fact
}

/// Count probabilities and inverse-series coefficients at one `(model, delta, K)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrectionCoeffs {
    pub delta: f64,
    pub order: usize,
    /// `p_1..p_M`.
    pub p: Vec<f64>,
    /// `l_1..l_{K+1}`.
    pub l: Vec<f64>,
}

impl CorrectionCoeffs {
    pub fn compute(model: &RenewalModel, delta: f64, order: usize) -> Result<Self> {
        let truncation = default_truncation(model, delta).max(order + 1);
        Self::with_truncation(model, delta, order, truncation)
    }

    pub fn with_truncation(
        model: &RenewalModel,
        delta: f64,
        order: usize,
        truncation: usize,
    ) -> Result<Self> {
        let p = count_probs(model, delta, truncation)?;
        let l = correction_coeffs(&p, order)?;
        Ok(CorrectionCoeffs { delta, order, p, l })
    }

    pub fn truncation(&self) -> usize {
        self.p.len()
    }
}
