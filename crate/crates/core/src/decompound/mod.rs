//! Count probabilities and the inverse-series correction, plus the
//! estimators assembled from them.

mod counts;
mod estimators;
mod inverse;
mod operator;

pub use counts::{
    count_bound, count_probs, default_truncation, CorrectionCoeffs, COUNT_TAIL_TOLERANCE,
    MAX_TRUNCATION,
};
pub use estimators::{
    combine_convolution_powers, convolution_power_estimator, corrected_estimator, estimate_theta,
    naive_estimator, oracle_estimator, CorrectedEstimate, ThetaEstimate,
};
pub use inverse::{contraction_constant, correction_coeffs, inversion_residual};
pub use operator::{apply_compounding, fixed_point_inverse, GridDensity, DEFAULT_L1_BOUND};
