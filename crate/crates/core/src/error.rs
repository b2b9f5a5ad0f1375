use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A scalar argument or model parameter is outside its admissible range.
    InvalidParameter { name: &'static str, value: f64 },
    /// Mixture weights are negative or do not sum to one.
    InvalidMixture(&'static str),
    /// The filter taps fail the orthonormality check.
    InvalidFilter(&'static str),
    /// A transform or convolution input length is not a usable power of two.
    InvalidLength { len: usize, min: usize },
    /// The bin exponent leaves no room for a decomposition level.
    NoDecompositionLevel {
        bin_exponent: u32,
        filter_len: usize,
    },
    /// Bisection on the nonzero-probability map could not bracket the target.
    NoBracket { target: f64 },
    /// The count-probability vector leaves more than the allowed tail mass.
    TruncationTooShort { truncation: usize, tail: f64 },
    /// Fewer coefficients than the requested correction order needs.
    CoefficientsTooShort { needed: usize, got: usize },
    /// Too few nonzero increments for the requested estimator.
    InsufficientData { needed: usize, got: usize },
    /// The increment series is all zero or has no zero increments at all.
    DegenerateSeries { nonzero: usize, len: usize },
    /// A fixed-point iterate left the L1 ball the contraction argument needs.
    ContractionFailure {
        iteration: usize,
        l1_norm: f64,
        bound: f64,
    },
    /// Two grids that must coincide do not.
    GridMismatch,
    /// The sample path has no jumps.
    EmptyPath,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter { name, value } => {
                write!(f, "invalid value {value} for parameter `{name}`")
            }
            Error::InvalidMixture(why) => write!(f, "invalid jump mixture: {why}"),
            Error::InvalidFilter(why) => write!(f, "invalid wavelet filter: {why}"),
            Error::InvalidLength { len, min } => {
                write!(f, "length {len} is not a power of two >= {min}")
            }
            Error::NoDecompositionLevel {
                bin_exponent,
                filter_len,
            } => write!(
                f,
                "2^{bin_exponent} bins leave no decomposition level for a {filter_len}-tap filter"
            ),
            Error::NoBracket { target } => {
                write!(
                    f,
                    "cannot bracket nonzero probability {target} in the parameter box"
                )
            }
            Error::TruncationTooShort { truncation, tail } => write!(
                f,
                "count probabilities truncated at {truncation} leave tail mass {tail:e}"
            ),
            Error::CoefficientsTooShort { needed, got } => {
                write!(f, "need {needed} count probabilities, got {got}")
            }
            Error::InsufficientData { needed, got } => {
                write!(f, "need at least {needed} nonzero increments, got {got}")
            }
            Error::DegenerateSeries { nonzero, len } => {
                write!(
                    f,
                    "degenerate increment series: {nonzero} nonzero out of {len}"
                )
            }
            Error::ContractionFailure {
                iteration,
                l1_norm,
                bound,
            } => write!(
                f,
                "fixed-point iterate {iteration} has L1 norm {l1_norm} above bound {bound}"
            ),
            Error::GridMismatch => f.write_str("evaluation grids do not match"),
            Error::EmptyPath => f.write_str("sample path has no jumps"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn ensure_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter { name, value })
    }
}
