use libm::{fabs, sqrt};

use crate::error::{Error, Result};

/// Orthogonal quadrature-mirror filter families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WaveletFilter {
    /// Least-asymmetric Daubechies, 4 vanishing moments, 8 taps.
    Symlet4,
    /// Extremal-phase Daubechies, 4 vanishing moments, 8 taps.
    Daubechies4,
    Haar,
}

// Decomposition low-pass taps as tabulated by PyWavelets (`sym4`, `db4`),
// which follow Daubechies, "Ten Lectures on Wavelets" (1992), Tables 6.2/6.3.
const SYM4: [f64; 8] = [
    -0.07576571478927333,
    -0.02963552764599851,
    0.49761866763201545,
    0.8037387518059161,
    0.29785779560527736,
    -0.09921954357684722,
    -0.012603967262037833,
    0.0322231006040427,
];

const DB4: [f64; 8] = [
    -0.010597401785069032,
    0.0328830116668852,
    0.030841381835560764,
    -0.18703481171909309,
    -0.027983769416859854,
    0.6308807679298589,
    0.7148465705529157,
    0.2303778133088965,
];

const HAAR: [f64; 2] = [
    core::f64::consts::FRAC_1_SQRT_2,
    core::f64::consts::FRAC_1_SQRT_2,
];

impl WaveletFilter {
    pub fn low_pass(&self) -> &'static [f64] {
        match self {
            WaveletFilter::Symlet4 => &SYM4,
            WaveletFilter::Daubechies4 => &DB4,
            WaveletFilter::Haar => &HAAR,
        }
    }

    /// High-pass tap `n`: `(-1)^n h[L - 1 - n]`.
    pub fn high_pass_tap(&self, n: usize) -> f64 {
        let h = self.low_pass();
        let v = h[h.len() - 1 - n];
        if n % 2 == 0 {
            v
        } else {
            -v
        }
    }

    /// Number of taps.
    pub fn taps(&self) -> usize {
        self.low_pass().len()
    }

    /// `ceil(log2(len))`: levels a signal must keep so the coarsest
    /// approximation is at least one filter long.
    pub fn support_exponent(&self) -> u32 {
        self.taps().next_power_of_two().trailing_zeros()
    }

    pub fn name(&self) -> &'static str {
        match self {
            WaveletFilter::Symlet4 => "sym4",
            WaveletFilter::Daubechies4 => "db4",
            WaveletFilter::Haar => "haar",
        }
    }

    /// Checks `sum h = sqrt 2` and `sum_n h[n] h[n + 2k] = delta_k` to `1e-12`.
    pub fn validate(&self) -> Result<()> {
        let h = self.low_pass();
        let sum: f64 = h.iter().sum();
        if fabs(sum - sqrt(2.0)) > 1e-12 {
            return Err(Error::InvalidFilter("low-pass taps must sum to sqrt(2)"));
        }
        for lag in (0..h.len()).step_by(2) {
            let ac: f64 = (0..h.len() - lag).map(|n| h[n] * h[n + lag]).sum();
            let target = if lag == 0 { 1.0 } else { 0.0 };
            if fabs(ac - target) > 1e-12 {
                return Err(Error::InvalidFilter(
                    "taps are not orthonormal under even shifts",
                ));
            }
        }
        Ok(())
    }
}
