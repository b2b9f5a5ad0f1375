//! Numerical core for estimating the jump density of a renewal reward process
//! from increments observed on a regular time grid.
//!
//! The crate is `no_std` (it needs `alloc`) and covers:
//!
//! - [`model`]: interarrival families and jump-size mixtures, with the closed
//!   form or quadrature quantities the estimators depend on.
//! - [`simulate`]: stationary sample paths, discretization and the nonzero
//!   increment statistics.
//! - [`wavelet`]: binned hard-threshold wavelet density estimation.
//! - [`decompound`]: count probabilities, the compounding operator, its
//!   fixed-point inverse and the order-`K` corrected estimator.
//!
//! File formats, configuration and the experiment runner live in the `rrd`
//! crate.
#![no_std]
#![warn(missing_debug_implementations)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod decompound;
pub mod error;
pub mod fft;
pub mod model;
pub mod quad;
pub mod rng;
pub mod series;
pub mod simulate;
pub mod wavelet;

pub use error::{Error, Result};
pub use model::{Interarrival, JumpKind, JumpMixture, MixtureComponent, ParamBox, RenewalModel};
pub use simulate::{IncrementSeries, NonzeroIncrements, SamplePath};
pub use wavelet::{DensityEstimate, EvalGrid, SampleQuality, WaveletConfig, WaveletFilter};
