use alloc::vec;
use alloc::vec::Vec;

use libm::{floor, log, round, sqrt};

use super::filters::WaveletFilter;
use super::transform::{dwt, hard_threshold, idwt};
use crate::error::{ensure_positive, Error, Result};

/// Estimates built from fewer samples than this are flagged [`SampleQuality::LowSample`].
pub const LOW_SAMPLE_COUNT: usize = 32;

/// Uniform evaluation grid `lo, lo + mesh, ...` up to `hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalGrid {
    pub lo: f64,
    pub hi: f64,
    pub mesh: f64,
}

impl EvalGrid {
    pub fn new(lo: f64, hi: f64, mesh: f64) -> Result<Self> {
        ensure_positive("mesh", mesh)?;
        if !(lo.is_finite() && hi.is_finite() && hi > lo) {
            return Err(Error::InvalidParameter {
                name: "grid.hi",
                value: hi,
            });
        }
        Ok(EvalGrid { lo, hi, mesh })
    }

    /// `[-10, 10]` with mesh `0.01`, 2001 nodes.
    pub fn benchmark() -> Self {
        EvalGrid {
            lo: -10.0,
            hi: 10.0,
            mesh: 0.01,
        }
    }

    /// `floor((hi - lo) / mesh) + 1`, snapping quotients within `1e-9` of an integer.
    pub fn len(&self) -> usize {
        let r = (self.hi - self.lo) / self.mesh;
        let snapped = round(r);
        let steps = if (r - snapped).abs() < 1e-9 {
            snapped
        } else {
            floor(r)
        };
        steps as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn node(&self, i: usize) -> f64 {
        self.lo + i as f64 * self.mesh
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |i| self.node(i))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleQuality {
    Normal,
    /// Fewer than [`LOW_SAMPLE_COUNT`] samples landed in the domain.
    LowSample,
    /// No samples at all; the estimate is identically zero.
    Degenerate,
}

/// Binned wavelet hard-threshold estimation settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveletConfig {
    pub filter: WaveletFilter,
    /// The domain is split into `2^bin_exponent` bins.
    pub bin_exponent: u32,
    /// Requested finest resolution level `J`.
    pub max_level: u32,
    /// Threshold constant.
    pub kappa: f64,
    pub domain_lo: f64,
    pub domain_hi: f64,
    pub eval_grid: EvalGrid,
}

impl WaveletConfig {
    pub fn new(
        filter: WaveletFilter,
        bin_exponent: u32,
        max_level: u32,
        kappa: f64,
        domain: (f64, f64),
        eval_grid: EvalGrid,
    ) -> Result<Self> {
        filter.validate()?;
        if !(kappa.is_finite() && kappa >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "kappa",
                value: kappa,
            });
        }
        if !(domain.0.is_finite() && domain.1.is_finite() && domain.0 < domain.1) {
            return Err(Error::InvalidParameter {
                name: "domain.hi",
                value: domain.1,
            });
        }
        if bin_exponent > 30 {
            return Err(Error::InvalidParameter {
                name: "bin_exponent",
                value: bin_exponent as f64,
            });
        }
        if max_level == 0 {
            return Err(Error::InvalidParameter {
                name: "max_level",
                value: 0.0,
            });
        }
        let cfg = WaveletConfig {
            filter,
            bin_exponent,
            max_level,
            kappa,
            domain_lo: domain.0,
            domain_hi: domain.1,
            eval_grid,
        };
        if cfg.available_levels() < 1 {
            return Err(Error::NoDecompositionLevel {
                bin_exponent,
                filter_len: filter.taps(),
            });
        }
        Ok(cfg)
    }

    /// Symlet 4, `2^8` bins on `[-10, 10]`, `J = 10`, `kappa = 1`.
    pub fn benchmark() -> Self {
        WaveletConfig::new(
            WaveletFilter::Symlet4,
            8,
            10,
            1.0,
            (-10.0, 10.0),
            EvalGrid::benchmark(),
        )
        .expect("benchmark wavelet settings are valid")
    }

    pub fn with_kappa(mut self, kappa: f64) -> Result<Self> {
        if !(kappa.is_finite() && kappa >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "kappa",
                value: kappa,
            });
        }
        self.kappa = kappa;
        Ok(self)
    }

    pub fn bins(&self) -> usize {
        1usize << self.bin_exponent
    }

    pub fn cell_width(&self) -> f64 {
        (self.domain_hi - self.domain_lo) / self.bins() as f64
    }

    fn available_levels(&self) -> i64 {
        self.bin_exponent as i64 - self.filter.support_exponent() as i64
    }

    /// `J_eff = min(J, L - ceil(log2(filter length)))`.
    pub fn effective_levels(&self) -> usize {
        (self.max_level as i64).min(self.available_levels()).max(1) as usize
    }

    /// `eta = kappa T^(-1/2) sqrt(log(T^(1/2)))`, defined for `T > 1`.
    pub fn threshold(&self, horizon: f64) -> Result<f64> {
        if !(horizon.is_finite() && horizon > 1.0) {
            return Err(Error::InvalidParameter {
                name: "horizon",
                value: horizon,
            });
        }
        Ok(self.kappa * sqrt(log(sqrt(horizon)) / horizon))
    }

    /// Largest `J` with `2^J log(T^(1/2)) <= T`.
    pub fn level_for_horizon(horizon: f64) -> Result<u32> {
        if !(horizon.is_finite() && horizon > 1.0) {
            return Err(Error::InvalidParameter {
                name: "horizon",
                value: horizon,
            });
        }
        let l = log(sqrt(horizon));
        let mut j = 0u32;
        while j < 62 && ((1u64 << (j + 1)) as f64) * l <= horizon {
            j += 1;
        }
        Ok(j)
    }
}

/// Histogram on `2^L` bins scaled to a density by `weights_total * cell_width`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinnedSignal {
    pub values: Vec<f64>,
    pub kept: usize,
    pub dropped: usize,
}

pub fn bin(samples: &[f64], weights_total: f64, cfg: &WaveletConfig) -> Result<BinnedSignal> {
    ensure_positive("weights_total", weights_total)?;
    let n = cfg.bins();
    let w = cfg.cell_width();
    let mut counts = vec![0u64; n];
    let mut dropped = 0;
    for &x in samples {
        if !(x >= cfg.domain_lo && x <= cfg.domain_hi) {
            dropped += 1;
            continue;
        }
        let i = (floor((x - cfg.domain_lo) / w) as usize).min(n - 1);
        counts[i] += 1;
    }
    let scale = 1.0 / (weights_total * w);
    Ok(BinnedSignal {
        values: counts.iter().map(|c| *c as f64 * scale).collect(),
        kept: samples.len() - dropped,
        dropped,
    })
}

/// An estimated density sampled on an [`EvalGrid`]. Values can be negative.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityEstimate {
    pub grid: EvalGrid,
    pub values: Vec<f64>,
    pub quality: SampleQuality,
    /// Samples inside the estimation domain.
    pub kept: usize,
    /// Samples outside the domain.
    pub dropped: usize,
}

impl DensityEstimate {
    pub fn zero(grid: EvalGrid) -> Self {
        DensityEstimate {
            grid,
            values: vec![0.0; grid.len()],
            quality: SampleQuality::Degenerate,
            kept: 0,
            dropped: 0,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.quality == SampleQuality::Degenerate
    }

    /// Riemann sum `mesh * sum(values)`.
    pub fn mass(&self) -> f64 {
        self.grid.mesh * self.values.iter().sum::<f64>()
    }
}

/// Bin, decompose, hard-threshold the detail bands at `eta(T, kappa)`,
/// reconstruct and read the result off the evaluation grid piecewise
/// constantly.
///
/// Coefficients are thresholded on the scale of an orthonormal basis of
/// `L2(R)`: a bin of width `w` carrying density `v` contributes `v sqrt(w)`.
pub fn density_estimate(
    samples: &[f64],
    effective_sample_size: f64,
    horizon: f64,
    cfg: &WaveletConfig,
) -> Result<DensityEstimate> {
    let eta = cfg.threshold(horizon)?;
    ensure_positive("effective_sample_size", effective_sample_size)?;
    if samples.is_empty() {
        return Ok(DensityEstimate::zero(cfg.eval_grid));
    }
    let binned = bin(samples, effective_sample_size, cfg)?;
    let quality = match binned.kept {
        0 => SampleQuality::Degenerate,
        k if k < LOW_SAMPLE_COUNT => SampleQuality::LowSample,
        _ => SampleQuality::Normal,
    };
    let root_w = sqrt(cfg.cell_width());
    let scaled: Vec<f64> = binned.values.iter().map(|v| v * root_w).collect();
    let pyramid = dwt(&scaled, cfg.filter, cfg.effective_levels())?;
    let kept = hard_threshold(&pyramid, eta);
    let recon: Vec<f64> = idwt(&kept, cfg.filter)
        .into_iter()
        .map(|v| v / root_w)
        .collect();
    Ok(DensityEstimate {
        grid: cfg.eval_grid,
        values: resample(&recon, cfg),
        quality,
        kept: binned.kept,
        dropped: binned.dropped,
    })
}

/// Piecewise-constant read-out of a bin signal at the evaluation nodes.
pub fn resample(signal: &[f64], cfg: &WaveletConfig) -> Vec<f64> {
    let w = cfg.cell_width();
    let n = signal.len();
    cfg.eval_grid
        .nodes()
        .map(|x| {
            if x < cfg.domain_lo || x > cfg.domain_hi {
                0.0
            } else {
                let i = (floor((x - cfg.domain_lo) / w) as usize).min(n - 1);
                signal[i]
            }
        })
        .collect()
}
