use alloc::vec;
use alloc::vec::Vec;

use libm::fabs;

use super::filters::WaveletFilter;
use crate::error::{Error, Result};

/// Periodized multilevel decomposition.
///
/// `details[0]` is the finest level (half the signal length), the last entry
/// the coarsest; `approx` has the length of the coarsest detail band.
#[derive(Debug, Clone, PartialEq)]
pub struct Pyramid {
    pub approx: Vec<f64>,
    pub details: Vec<Vec<f64>>,
}

impl Pyramid {
    pub fn levels(&self) -> usize {
        self.details.len()
    }

    /// Number of nonzero detail coefficients.
    pub fn surviving_details(&self) -> usize {
        self.details.iter().flatten().filter(|b| **b != 0.0).count()
    }

    /// Euclidean norm of all coefficients.
    pub fn norm(&self) -> f64 {
        let s: f64 = self
            .approx
            .iter()
            .chain(self.details.iter().flatten())
            .map(|c| c * c)
            .sum();
        libm::sqrt(s)
    }
}

/// One analysis step: `a[k] = sum h[n] x[2k+n]`, `d[k] = sum g[n] x[2k+n]`, indices mod `len`.
fn analyze(x: &[f64], filter: WaveletFilter) -> (Vec<f64>, Vec<f64>) {
    let h = filter.low_pass();
    let n = x.len();
    let half = n / 2;
    let mut a = vec![0.0; half];
    let mut d = vec![0.0; half];
    for k in 0..half {
        let (mut sa, mut sd) = (0.0, 0.0);
        for (t, ht) in h.iter().enumerate() {
            let v = x[(2 * k + t) % n];
            sa += ht * v;
            sd += filter.high_pass_tap(t) * v;
        }
        a[k] = sa;
        d[k] = sd;
    }
    (a, d)
}

/// Adjoint of [`analyze`]; exact inverse because the step is orthogonal.
fn synthesize(a: &[f64], d: &[f64], filter: WaveletFilter) -> Vec<f64> {
    let h = filter.low_pass();
    let n = 2 * a.len();
    let mut x = vec![0.0; n];
    for k in 0..a.len() {
        for (t, ht) in h.iter().enumerate() {
            x[(2 * k + t) % n] += ht * a[k] + filter.high_pass_tap(t) * d[k];
        }
    }
    x
}

/// Decomposes `signal` over `levels` levels with periodic boundary handling.
///
/// The length must be a power of two and the coarsest input (length
/// `len / 2^(levels-1)`) must still hold a full filter.
pub fn dwt(signal: &[f64], filter: WaveletFilter, levels: usize) -> Result<Pyramid> {
    let len = signal.len();
    let min = filter.taps() << levels.saturating_sub(1);
    if !len.is_power_of_two() || len < min || levels == 0 {
        return Err(Error::InvalidLength { len, min });
    }
    let mut approx = signal.to_vec();
    let mut details = Vec::with_capacity(levels);
    for _ in 0..levels {
        let (a, d) = analyze(&approx, filter);
        details.push(d);
        approx = a;
    }
    Ok(Pyramid { approx, details })
}

pub fn idwt(pyramid: &Pyramid, filter: WaveletFilter) -> Vec<f64> {
    let mut x = pyramid.approx.clone();
    for d in pyramid.details.iter().rev() {
        x = synthesize(&x, d, filter);
    }
    x
}

/// Zeroes detail coefficients with `|beta| < eta`; the approximation band
/// passes through untouched. Coefficients with `|beta| == eta` survive.
pub fn hard_threshold(pyramid: &Pyramid, eta: f64) -> Pyramid {
    assert!(eta >= 0.0, "threshold must be nonnegative");
    Pyramid {
        approx: pyramid.approx.clone(),
        details: pyramid
            .details
            .iter()
            .map(|band| {
                band.iter()
                    .map(|&b| if fabs(b) >= eta { b } else { 0.0 })
                    .collect()
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng;
    use proptest::prelude::*;

    fn random_signal(len: usize, seed: u64) -> Vec<f64> {
        let mut r = rng::stream(seed);
        (0..len).map(|_| rng::unit(&mut r) * 2.0 - 1.0).collect()
    }

    #[test]
    fn zero_signal_zero_coefficients() {
        let p = dwt(&[0.0; 256], WaveletFilter::Symlet4, 5).unwrap();
        assert_eq!(p.norm(), 0.0);
    }

    #[test]
    fn round_trip_and_parseval() {
        for f in [
            WaveletFilter::Symlet4,
            WaveletFilter::Daubechies4,
            WaveletFilter::Haar,
        ] {
            let x = random_signal(256, 3);
            let p = dwt(&x, f, 5).unwrap();
            let y = idwt(&p, f);
            let err = x
                .iter()
                .zip(&y)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            assert!(err < 1e-10, "{f:?} round trip {err}");
            let nx = libm::sqrt(x.iter().map(|v| v * v).sum::<f64>());
            assert!((nx - p.norm()).abs() < 1e-10, "{f:?} parseval");
        }
    }

    #[test]
    fn constant_signal_has_no_detail() {
        let p = dwt(&[0.7; 256], WaveletFilter::Symlet4, 5).unwrap();
        let worst = p
            .details
            .iter()
            .flatten()
            .map(|d| d.abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-10, "{worst}");
    }

    #[test]
    fn rejects_bad_lengths() {
        assert!(dwt(&[0.0; 100], WaveletFilter::Haar, 1).is_err());
        assert!(dwt(&[0.0; 64], WaveletFilter::Symlet4, 5).is_err());
        assert!(dwt(&[0.0; 64], WaveletFilter::Symlet4, 4).is_ok());
    }

    #[test]
    fn threshold_examples() {
        let p = Pyramid {
            approx: vec![5.0, -0.1],
            details: vec![vec![0.5, -2.0, 1.0]],
        };
        assert_eq!(hard_threshold(&p, 0.0), p);
        let t = hard_threshold(&p, 1.0);
        assert_eq!(t.details[0], vec![0.0, -2.0, 1.0]);
        assert_eq!(t.approx, p.approx);
        let all = hard_threshold(&p, 10.0);
        assert_eq!(all.surviving_details(), 0);
        assert_eq!(all.approx, p.approx);
    }

    proptest! {
        #[test]
        fn threshold_idempotent_and_monotone(seed in 0u64..1000, eta in 0.0f64..0.5, bump in 0.0f64..0.5) {
            let x = random_signal(128, seed);
            let p = dwt(&x, WaveletFilter::Symlet4, 4).unwrap();
            let once = hard_threshold(&p, eta);
            prop_assert_eq!(hard_threshold(&once, eta), once.clone());
            let higher = hard_threshold(&p, eta + bump);
            prop_assert!(higher.surviving_details() <= once.surviving_details());
        }
    }
}
