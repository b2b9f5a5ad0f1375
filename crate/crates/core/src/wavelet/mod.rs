//! Binned wavelet hard-threshold density estimation on a compact domain.

mod estimate;
mod filters;
mod transform;

pub use estimate::{
    bin, density_estimate, resample, BinnedSignal, DensityEstimate, EvalGrid, SampleQuality,
    WaveletConfig, LOW_SAMPLE_COUNT,
};
pub use filters::WaveletFilter;
pub use transform::{dwt, hard_threshold, idwt, Pyramid};
