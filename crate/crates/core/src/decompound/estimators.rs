use alloc::vec::Vec;

use super::counts::CorrectionCoeffs;
use crate::error::{Error, Result};
use crate::model::RenewalModel;
use crate::simulate::{block_sums, IncrementSeries, SamplePath};
use crate::wavelet::{density_estimate, DensityEstimate, SampleQuality, WaveletConfig};

/// Result of inverting the empirical nonzero fraction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaEstimate {
    /// Parameter after clamping to the model's box.
    pub value: f64,
    pub raw: f64,
    pub clamped: bool,
    /// `q_hat = N_T / n`.
    pub nonzero_fraction: f64,
}

/// Moment estimate of the interarrival parameter from `q_hat = N_T / n`.
pub fn estimate_theta(series: &IncrementSeries, model: &RenewalModel) -> Result<ThetaEstimate> {
    let n = series.len();
    let nonzero = series.nonzero_count();
    if nonzero == 0 || nonzero == n {
        return Err(Error::DegenerateSeries { nonzero, len: n });
    }
    let q_hat = nonzero as f64 / n as f64;
    let raw = model.invert_q(q_hat, series.delta())?;
    let (value, clamped) = model.param_box().clamp(raw);
    Ok(ThetaEstimate {
        value,
        raw,
        clamped,
        nonzero_fraction: q_hat,
    })
}

/// Wavelet estimate from the nonzero increments, weighted by `1 / N_T`.
///
/// With no nonzero increment the result is the zero function flagged degenerate.
pub fn naive_estimator(
    series: &IncrementSeries,
    cfg: &WaveletConfig,
    horizon: f64,
) -> Result<DensityEstimate> {
    let nonzero = series.nonzero();
    if nonzero.count() == 0 {
        cfg.threshold(horizon)?;
        return Ok(DensityEstimate::zero(cfg.eval_grid));
    }
    power_estimate(&nonzero.values, 1, cfg, horizon)
}

/// Estimate of `P[f]^{*m}` from sums of `m` nonzero increments.
pub fn convolution_power_estimator(
    series: &IncrementSeries,
    m: usize,
    cfg: &WaveletConfig,
    horizon: f64,
) -> Result<DensityEstimate> {
    if m == 0 {
        return Err(Error::InvalidParameter {
            name: "m",
            value: 0.0,
        });
    }
    power_estimate(&series.nonzero().values, m, cfg, horizon)
}

fn power_estimate(
    nonzero: &[f64],
    m: usize,
    cfg: &WaveletConfig,
    horizon: f64,
) -> Result<DensityEstimate> {
    if nonzero.len() < m {
        return Err(Error::InsufficientData {
            needed: m,
            got: nonzero.len(),
        });
    }
    let sums = if m == 1 {
        nonzero.to_vec()
    } else {
        block_sums(nonzero, m)
    };
    let n = sums.len() as f64;
    density_estimate(&sums, n, horizon, cfg)
}

/// `sum_m l_m P_m` over the nonzero increments of `series`, with `l[0]`
/// weighting the first power.
pub fn combine_convolution_powers(
    series: &IncrementSeries,
    l: &[f64],
    cfg: &WaveletConfig,
    horizon: f64,
) -> Result<DensityEstimate> {
    let nonzero = series.nonzero().values;
    if l.is_empty() {
        return Err(Error::CoefficientsTooShort { needed: 1, got: 0 });
    }
    if nonzero.len() < l.len() {
        return Err(Error::InsufficientData {
            needed: l.len(),
            got: nonzero.len(),
        });
    }
    let mut out = power_estimate(&nonzero, 1, cfg, horizon)?;
    if l[0] != 1.0 {
        for v in out.values.iter_mut() {
            *v *= l[0];
        }
    }
    for (i, &weight) in l.iter().enumerate().skip(1) {
        let part = power_estimate(&nonzero, i + 1, cfg, horizon)?;
        for (v, pv) in out.values.iter_mut().zip(&part.values) {
            *v += weight * pv;
        }
        out.quality = worse(out.quality, part.quality);
    }
    Ok(out)
}

fn worse(a: SampleQuality, b: SampleQuality) -> SampleQuality {
    use SampleQuality::*;
    match (a, b) {
        (Degenerate, _) | (_, Degenerate) => Degenerate,
        (LowSample, _) | (_, LowSample) => LowSample,
        _ => Normal,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrectedEstimate {
    pub estimate: DensityEstimate,
    /// `None` for `K = 0`, where no parameter is needed.
    pub theta: Option<ThetaEstimate>,
    pub coeffs: CorrectionCoeffs,
}

/// Order-`K` corrected estimator.
///
/// For `K >= 1` the interarrival parameter is estimated from the nonzero
/// fraction, `p_m` is computed at the estimate and the convolution-power
/// estimates are combined with the inverse-series coefficients. `K = 0`
/// reproduces [`naive_estimator`] exactly.
pub fn corrected_estimator(
    series: &IncrementSeries,
    model: &RenewalModel,
    order: usize,
    cfg: &WaveletConfig,
    horizon: f64,
) -> Result<CorrectedEstimate> {
    let delta = series.delta();
    if order == 0 {
        let estimate = naive_estimator(series, cfg, horizon)?;
        let coeffs = CorrectionCoeffs {
            delta,
            order: 0,
            p: Vec::new(),
            l: alloc::vec![1.0],
        };
        return Ok(CorrectedEstimate {
            estimate,
            theta: None,
            coeffs,
        });
    }
    let got = series.nonzero_count();
    if got < order + 1 {
        return Err(Error::InsufficientData {
            needed: order + 1,
            got,
        });
    }
    let theta = estimate_theta(series, model)?;
    let fitted = model.with_param(theta.value)?;
    let coeffs = CorrectionCoeffs::compute(&fitted, delta, order)?;
    let estimate = combine_convolution_powers(series, &coeffs.l, cfg, horizon)?;
    Ok(CorrectedEstimate {
        estimate,
        theta: Some(theta),
        coeffs,
    })
}

/// Wavelet estimate from the true jump sizes, weighted by `1 / R_T`.
pub fn oracle_estimator(
    path: &SamplePath,
    cfg: &WaveletConfig,
    horizon: f64,
) -> Result<DensityEstimate> {
    if path.jump_sizes.is_empty() {
        return Err(Error::EmptyPath);
    }
    density_estimate(&path.jump_sizes, path.jump_sizes.len() as f64, horizon, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::JumpMixture;
    use crate::simulate::{discretize, sample_path};
    use crate::wavelet::{EvalGrid, WaveletFilter};

    fn fixture(seed: u64, horizon: f64) -> (RenewalModel, SamplePath, IncrementSeries) {
        let model = RenewalModel::beta_one_theta(3.0).unwrap();
        let path = sample_path(&model, &JumpMixture::benchmark(), horizon, seed).unwrap();
        let series = discretize(&path, 0.1).unwrap();
        (model, path, series)
    }

    #[test]
    fn theta_recovered() {
        for seed in 0..5 {
            let (model, _, series) = fixture(seed, 10_000.0);
            let t = estimate_theta(&series, &model).unwrap();
            assert!((t.value - 3.0).abs() < 0.1, "seed {seed}: {}", t.value);
            assert!((t.nonzero_fraction - 0.3439).abs() < 0.006);
            assert!(!t.clamped);
        }
    }

    #[test]
    fn degenerate_series_rejected() {
        let model = RenewalModel::beta_one_theta(3.0).unwrap();
        let zeros = IncrementSeries::new(0.1, alloc::vec![0.0; 10]).unwrap();
        assert!(matches!(
            estimate_theta(&zeros, &model),
            Err(Error::DegenerateSeries { .. })
        ));
        let full = IncrementSeries::new(0.1, alloc::vec![1.0; 10]).unwrap();
        assert!(matches!(
            estimate_theta(&full, &model),
            Err(Error::DegenerateSeries { .. })
        ));
    }

    #[test]
    fn order_zero_equals_naive_bitwise() {
        let (model, _, series) = fixture(11, 2_000.0);
        let cfg = WaveletConfig::benchmark();
        let naive = naive_estimator(&series, &cfg, 2_000.0).unwrap();
        let k0 = corrected_estimator(&series, &model, 0, &cfg, 2_000.0).unwrap();
        assert_eq!(naive.values, k0.estimate.values);
        assert!(k0.theta.is_none());
    }

    #[test]
    fn empty_series_gives_degenerate_zero() {
        let series = IncrementSeries::new(0.1, alloc::vec![0.0; 100]).unwrap();
        let est = naive_estimator(&series, &WaveletConfig::benchmark(), 10.0).unwrap();
        assert!(est.is_degenerate());
        assert!(est.values.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn too_few_increments_for_power() {
        let series = IncrementSeries::new(0.1, alloc::vec![0.0, 1.0, 0.0]).unwrap();
        let err = convolution_power_estimator(&series, 2, &WaveletConfig::benchmark(), 10.0);
        assert!(matches!(
            err,
            Err(Error::InsufficientData { needed: 2, got: 1 })
        ));
    }

    #[test]
    fn combination_is_linear() {
        let (_, _, series) = fixture(5, 1_000.0);
        let cfg = WaveletConfig::benchmark();
        let p1 = convolution_power_estimator(&series, 1, &cfg, 1_000.0).unwrap();
        let p2 = convolution_power_estimator(&series, 2, &cfg, 1_000.0).unwrap();
        let c = combine_convolution_powers(&series, &[1.2, -0.2], &cfg, 1_000.0).unwrap();
        for i in 0..c.values.len() {
            let want = 1.2 * p1.values[i] - 0.2 * p2.values[i];
            assert!((c.values[i] - want).abs() < 1e-12);
        }
    }

    #[test]
    fn oracle_needs_jumps() {
        let path = SamplePath {
            jump_times: alloc::vec![],
            jump_sizes: alloc::vec![],
            horizon: 1.0,
            seed: 0,
        };
        let cfg = WaveletConfig::new(
            WaveletFilter::Haar,
            6,
            3,
            1.0,
            (-10.0, 10.0),
            EvalGrid::benchmark(),
        )
        .unwrap();
        assert!(matches!(
            oracle_estimator(&path, &cfg, 10.0),
            Err(Error::EmptyPath)
        ));
    }
}
