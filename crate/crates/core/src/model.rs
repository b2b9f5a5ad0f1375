//! Interarrival families and jump-size mixtures.
//!
//! A renewal model is a one-parameter interarrival density `tau` together with
//! everything derived from it that the estimators consume: the CDF `F`, the
//! mean `mu`, the stationary delay density `tau0(x) = (1 - F(x)) / mu` and the
//! probability `q` that a window of length `delta` contains at least one
//! renewal.

use alloc::vec::Vec;

use libm::{exp, expm1, fabs, log, log1p, pow};

use crate::error::{ensure_positive, Error, Result};
use crate::quad;

pub const DEFAULT_QUADRATURE_STEPS: usize = 4096;

/// Interarrival family with its single free parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Interarrival {
    /// Beta(1, theta): `tau(x) = theta (1 - x)^(theta - 1)` on `[0, 1]`.
    BetaOneTheta { theta: f64 },
    /// Exponential with intensity `rate`; the Poisson special case.
    Exponential { rate: f64 },
}

impl Interarrival {
    pub fn param(&self) -> f64 {
        match *self {
            Interarrival::BetaOneTheta { theta } => theta,
            Interarrival::Exponential { rate } => rate,
        }
    }

    pub fn with_param(&self, value: f64) -> Self {
        match self {
            Interarrival::BetaOneTheta { .. } => Interarrival::BetaOneTheta { theta: value },
            Interarrival::Exponential { .. } => Interarrival::Exponential { rate: value },
        }
    }
}

/// Compact parameter set the estimated parameter is clamped to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamBox {
    pub lo: f64,
    pub hi: f64,
}

impl Default for ParamBox {
    fn default() -> Self {
        ParamBox { lo: 0.5, hi: 10.0 }
    }
}

impl ParamBox {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        ensure_positive("param_box.lo", lo)?;
        if !(hi.is_finite() && hi > lo) {
            return Err(Error::InvalidParameter {
                name: "param_box.hi",
                value: hi,
            });
        }
        Ok(ParamBox { lo, hi })
    }

    pub fn contains(&self, v: f64) -> bool {
        v >= self.lo && v <= self.hi
    }

    /// Returns the clamped value and whether clamping changed it.
    pub fn clamp(&self, v: f64) -> (f64, bool) {
        if v.is_nan() {
            return (self.lo, true);
        }
        let c = v.clamp(self.lo, self.hi);
        (c, c != v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenewalModel {
    family: Interarrival,
    quadrature_steps: usize,
    param_box: ParamBox,
}

impl RenewalModel {
    pub fn new(family: Interarrival) -> Result<Self> {
        match family {
            Interarrival::BetaOneTheta { theta } => ensure_positive("theta", theta)?,
            Interarrival::Exponential { rate } => ensure_positive("rate", rate)?,
        };
        Ok(RenewalModel {
            family,
            quadrature_steps: DEFAULT_QUADRATURE_STEPS,
            param_box: ParamBox::default(),
        })
    }

    pub fn beta_one_theta(theta: f64) -> Result<Self> {
        Self::new(Interarrival::BetaOneTheta { theta })
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        Self::new(Interarrival::Exponential { rate })
    }

    pub fn with_quadrature_steps(mut self, steps: usize) -> Result<Self> {
        if steps == 0 {
            return Err(Error::InvalidParameter {
                name: "quadrature_steps",
                value: 0.0,
            });
        }
        self.quadrature_steps = steps;
        Ok(self)
    }

    pub fn with_param_box(mut self, param_box: ParamBox) -> Self {
        self.param_box = param_box;
        self
    }

    /// Same family and settings, different parameter value.
    pub fn with_param(&self, value: f64) -> Result<Self> {
        let mut m = Self::new(self.family.with_param(value))?;
        m.quadrature_steps = self.quadrature_steps;
        m.param_box = self.param_box;
        Ok(m)
    }

    pub fn family(&self) -> Interarrival {
        self.family
    }

    pub fn param(&self) -> f64 {
        self.family.param()
    }

    pub fn param_box(&self) -> ParamBox {
        self.param_box
    }

    pub fn quadrature_steps(&self) -> usize {
        self.quadrature_steps
    }

    /// Right end of the interarrival support, `None` when unbounded.
    pub fn support_end(&self) -> Option<f64> {
        match self.family {
            Interarrival::BetaOneTheta { .. } => Some(1.0),
            Interarrival::Exponential { .. } => None,
        }
    }

    /// A finite integration range carrying all but a negligible tail of `tau`.
    pub fn effective_support_end(&self) -> f64 {
        match self.family {
            Interarrival::BetaOneTheta { .. } => 1.0,
            // exp(-40) tail
            Interarrival::Exponential { rate } => 40.0 / rate,
        }
    }

    /// Interarrival density `tau(x)`.
    pub fn interarrival_pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        match self.family {
            Interarrival::BetaOneTheta { theta } => {
                if x > 1.0 {
                    0.0
                } else if x == 1.0 {
                    // limit of theta (1-x)^(theta-1) at the right end
                    if theta > 1.0 {
                        0.0
                    } else if theta == 1.0 {
                        1.0
                    } else {
                        f64::INFINITY
                    }
                } else {
                    theta * pow(1.0 - x, theta - 1.0)
                }
            }
            Interarrival::Exponential { rate } => rate * exp(-rate * x),
        }
    }

    /// Interarrival CDF `F(x)`.
    pub fn interarrival_cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match self.family {
            Interarrival::BetaOneTheta { theta } => {
                if x >= 1.0 {
                    1.0
                } else {
                    1.0 - pow(1.0 - x, theta)
                }
            }
            Interarrival::Exponential { rate } => -expm1(-rate * x),
        }
    }

    /// `tau(0)`, the quantity driving the small-window count bounds.
    pub fn tau_at_zero(&self) -> f64 {
        self.interarrival_pdf(0.0)
    }

    /// Mean interarrival time `mu`.
    pub fn mean(&self) -> f64 {
        match self.family {
            Interarrival::BetaOneTheta { theta } => 1.0 / (theta + 1.0),
            Interarrival::Exponential { rate } => 1.0 / rate,
        }
    }

    /// `mu` by trapezoid quadrature of `1 - F` over the effective support.
    pub fn mean_by_quadrature(&self) -> f64 {
        quad::trapezoid(
            |t| 1.0 - self.interarrival_cdf(t),
            0.0,
            self.effective_support_end(),
            self.quadrature_steps,
        )
    }

    /// Stationary delay density `tau0(x) = (1 - F(x)) / mu`.
    pub fn stationary_delay_pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        (1.0 - self.interarrival_cdf(x)) / self.mean()
    }

    /// CDF of the stationary delay, i.e. `P(J_1 <= x)`.
    pub fn stationary_delay_cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match self.family {
            Interarrival::BetaOneTheta { theta } => {
                if x >= 1.0 {
                    1.0
                } else {
                    1.0 - pow(1.0 - x, theta + 1.0)
                }
            }
            Interarrival::Exponential { rate } => -expm1(-rate * x),
        }
    }

    /// `q = P(R_delta != 0) = P(J_1 <= delta)`.
    pub fn nonzero_prob(&self, delta: f64) -> Result<f64> {
        ensure_positive("delta", delta)?;
        Ok(self.stationary_delay_cdf(delta))
    }

    /// `q` computed as `(1/mu) * integral_0^delta (1 - F(u)) du` by quadrature.
    pub fn nonzero_prob_by_quadrature(&self, delta: f64) -> Result<f64> {
        ensure_positive("delta", delta)?;
        let integral = quad::trapezoid(
            |u| 1.0 - self.interarrival_cdf(u),
            0.0,
            delta,
            self.quadrature_steps,
        );
        Ok(integral / self.mean())
    }

    /// Parameter value whose nonzero probability at `delta` equals `q_hat`.
    ///
    /// The value is not clamped to the parameter box; callers decide what to
    /// do with values outside it.
    pub fn invert_q(&self, q_hat: f64, delta: f64) -> Result<f64> {
        check_open_unit("q_hat", q_hat)?;
        ensure_positive("delta", delta)?;
        match self.family {
            Interarrival::BetaOneTheta { .. } if delta < 1.0 => {
                Ok(log1p(-q_hat) / log1p(-delta) - 1.0)
            }
            _ => self.invert_q_by_bisection(q_hat, delta),
        }
    }

    /// Bisection on the increasing map `param -> q(param, delta)`.
    pub fn invert_q_by_bisection(&self, q_hat: f64, delta: f64) -> Result<f64> {
        check_open_unit("q_hat", q_hat)?;
        ensure_positive("delta", delta)?;
        let q_at = |v: f64| -> f64 { self.family_q(v, delta) };

        let (mut lo, mut hi) = (self.param_box.lo, self.param_box.hi);
        let mut widen = 0;
        while q_at(lo) > q_hat {
            lo *= 0.5;
            widen += 1;
            if widen > 60 {
                return Err(Error::NoBracket { target: q_hat });
            }
        }
        widen = 0;
        while q_at(hi) < q_hat {
            hi *= 2.0;
            widen += 1;
            if widen > 60 {
                return Err(Error::NoBracket { target: q_hat });
            }
        }
        for _ in 0..200 {
            if hi - lo <= 1e-12 * hi.max(1.0) {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if q_at(mid) < q_hat {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    fn family_q(&self, param: f64, delta: f64) -> f64 {
        let m = RenewalModel {
            family: self.family.with_param(param),
            ..*self
        };
        m.stationary_delay_cdf(delta)
    }

    /// Largest window length below which `F(delta) <= 1/2` and
    /// `sup_[0, delta] tau <= 2 tau(0)`, found on a uniform scan.
    pub fn small_window_limit(&self) -> f64 {
        let end = self.effective_support_end();
        let steps = self.quadrature_steps;
        let h = end / steps as f64;
        let cap = 2.0 * self.tau_at_zero();
        let mut last = 0.0;
        for i in 1..=steps {
            let x = i as f64 * h;
            if self.interarrival_cdf(x) > 0.5 || self.interarrival_pdf(x) > cap {
                break;
            }
            last = x;
        }
        last
    }

    /// Inverse-CDF draw of an interarrival time from `u` in `[0, 1)`.
    pub fn sample_interarrival(&self, u: f64) -> f64 {
        match self.family {
            Interarrival::BetaOneTheta { theta } => -expm1(log1p(-u) / theta),
            Interarrival::Exponential { rate } => -log1p(-u) / rate,
        }
    }

    /// Inverse-CDF draw of the stationary first arrival from `u` in `[0, 1)`.
    pub fn sample_stationary_delay(&self, u: f64) -> f64 {
        match self.family {
            Interarrival::BetaOneTheta { theta } => -expm1(log1p(-u) / (theta + 1.0)),
            Interarrival::Exponential { rate } => -log1p(-u) / rate,
        }
    }
}

fn check_open_unit(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, value: v })
    }
}

/// A primitive jump-size law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum JumpKind {
    Uniform { lo: f64, hi: f64 },
    Laplace { loc: f64, scale: f64 },
}

impl JumpKind {
    fn validate(&self) -> Result<()> {
        match *self {
            JumpKind::Uniform { lo, hi } => {
                if !(lo.is_finite() && hi.is_finite() && hi > lo) {
                    return Err(Error::InvalidMixture("uniform component needs lo < hi"));
                }
            }
            JumpKind::Laplace { loc, scale } => {
                if !loc.is_finite() {
                    return Err(Error::InvalidMixture("laplace location must be finite"));
                }
                ensure_positive("scale", scale)?;
            }
        }
        Ok(())
    }

    pub fn pdf(&self, x: f64) -> f64 {
        match *self {
            JumpKind::Uniform { lo, hi } => {
                if x >= lo && x <= hi {
                    1.0 / (hi - lo)
                } else {
                    0.0
                }
            }
            JumpKind::Laplace { loc, scale } => exp(-fabs(x - loc) / scale) / (2.0 * scale),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            JumpKind::Uniform { lo, hi } => ((x - lo) / (hi - lo)).clamp(0.0, 1.0),
            JumpKind::Laplace { loc, scale } => {
                if x < loc {
                    0.5 * exp((x - loc) / scale)
                } else {
                    1.0 - 0.5 * exp(-(x - loc) / scale)
                }
            }
        }
    }

    /// Inverse-CDF draw from `u` in the open interval `(0, 1)`.
    pub fn sample(&self, u: f64) -> f64 {
        match *self {
            JumpKind::Uniform { lo, hi } => lo + (hi - lo) * u,
            JumpKind::Laplace { loc, scale } => {
                let v = u - 0.5;
                if v < 0.0 {
                    loc + scale * log(1.0 + 2.0 * v)
                } else {
                    loc - scale * log(1.0 - 2.0 * v)
                }
            }
        }
    }

    /// Smallest `r` with mass outside `[-r, r]` below `tail`.
    fn radius(&self, tail: f64) -> f64 {
        match *self {
            JumpKind::Uniform { lo, hi } => fabs(lo).max(fabs(hi)),
            JumpKind::Laplace { loc, scale } => fabs(loc) + scale * log(1.0 / tail),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureComponent {
    pub kind: JumpKind,
    pub weight: f64,
}

/// Jump-size density `f` as a finite weighted mixture.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpMixture {
    components: Vec<MixtureComponent>,
}

impl JumpMixture {
    pub fn new(components: Vec<MixtureComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidMixture("no components"));
        }
        let mut total = 0.0;
        for c in &components {
            c.kind.validate()?;
            if !(c.weight >= 0.0 && c.weight <= 1.0) {
                return Err(Error::InvalidMixture("weights must lie in [0, 1]"));
            }
            total += c.weight;
        }
        if fabs(total - 1.0) > 1e-12 {
            return Err(Error::InvalidMixture("weights must sum to 1"));
        }
        Ok(JumpMixture { components })
    }

    /// `(1 - a) U[-2, 2] + a Laplace(1, 0.5)` with `a = 0.5`.
    pub fn benchmark() -> Self {
        JumpMixture {
            components: alloc::vec![
                MixtureComponent {
                    kind: JumpKind::Uniform { lo: -2.0, hi: 2.0 },
                    weight: 0.5,
                },
                MixtureComponent {
                    kind: JumpKind::Laplace {
                        loc: 1.0,
                        scale: 0.5
                    },
                    weight: 0.5,
                },
            ],
        }
    }

    pub fn components(&self) -> &[MixtureComponent] {
        &self.components
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.components
            .iter()
            .map(|c| c.weight * c.kind.pdf(x))
            .sum()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        self.components
            .iter()
            .map(|c| c.weight * c.kind.cdf(x))
            .sum()
    }

    /// Draws one jump: `pick` selects the component, `u` drives its inverse CDF.
    pub fn sample(&self, pick: f64, u: f64) -> f64 {
        let mut acc = 0.0;
        for c in &self.components {
            acc += c.weight;
            if pick < acc {
                return c.kind.sample(u);
            }
        }
        // pick landed in the rounding gap above the last cumulative weight
        let last = self
            .components
            .iter()
            .rev()
            .find(|c| c.weight > 0.0)
            .unwrap_or(&self.components[0]);
        last.kind.sample(u)
    }

    /// Half-width of a centered interval holding all but `tail` of the mass.
    pub fn support_radius(&self, tail: f64) -> f64 {
        self.components
            .iter()
            .filter(|c| c.weight > 0.0)
            .map(|c| c.kind.radius(tail))
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn richardson<F: Fn(f64) -> f64 + Copy>(f: F, a: f64, b: f64, n: usize) -> f64 {
        let coarse = quad::trapezoid(f, a, b, n);
        let fine = quad::trapezoid(f, a, b, 2 * n);
        (4.0 * fine - coarse) / 3.0
    }

    #[test]
    fn interarrival_pdf_examples() {
        let b = RenewalModel::beta_one_theta(3.0).unwrap();
        assert_eq!(b.interarrival_pdf(0.0), 3.0);
        assert_eq!(b.interarrival_pdf(1.0), 0.0);
        let e = RenewalModel::exponential(2.0).unwrap();
        assert_eq!(e.interarrival_pdf(0.0), 2.0);
    }

    #[test]
    fn densities_integrate_to_one() {
        for m in [
            RenewalModel::beta_one_theta(3.0).unwrap(),
            RenewalModel::beta_one_theta(1.0).unwrap(),
            RenewalModel::beta_one_theta(7.5).unwrap(),
            RenewalModel::exponential(2.0).unwrap(),
        ] {
            let end = m.effective_support_end();
            let tau = richardson(|x| m.interarrival_pdf(x), 0.0, end, 4096);
            let tau0 = richardson(|x| m.stationary_delay_pdf(x), 0.0, end, 4096);
            assert!((tau - 1.0).abs() < 1e-8, "{m:?} tau mass {tau}");
            assert!((tau0 - 1.0).abs() < 1e-8, "{m:?} tau0 mass {tau0}");
        }
    }

    #[test]
    fn mean_matches_quadrature_oracle() {
        let b = RenewalModel::beta_one_theta(3.0).unwrap();
        let oracle = richardson(|t| t * b.interarrival_pdf(t), 0.0, 1.0, 4096);
        assert!((oracle - 0.25).abs() < 1e-10);
        assert_eq!(b.mean(), 0.25);
        assert!((b.mean_by_quadrature() - 0.25).abs() < 1e-6);
        assert_eq!(RenewalModel::exponential(2.0).unwrap().mean(), 0.5);
        assert_eq!(RenewalModel::beta_one_theta(1.0).unwrap().mean(), 0.5);
    }

    #[test]
    fn stationary_delay_at_zero_is_inverse_mean() {
        let b = RenewalModel::beta_one_theta(3.0).unwrap();
        assert_eq!(b.stationary_delay_pdf(0.0), 4.0);
        let e = RenewalModel::exponential(1.7).unwrap();
        for i in 0..50 {
            let x = i as f64 * 0.13;
            let d = (e.stationary_delay_pdf(x) - e.interarrival_pdf(x)).abs();
            assert!(d < 1e-12, "memorylessness broken at {x}");
        }
    }

    #[test]
    fn nonzero_prob_closed_form_and_quadrature() {
        let b = RenewalModel::beta_one_theta(3.0).unwrap();
        let q = b.nonzero_prob(0.1).unwrap();
        assert!((q - 0.3439).abs() < 1e-12);
        assert!((b.nonzero_prob_by_quadrature(0.1).unwrap() - q).abs() < 1e-8);
        let e = RenewalModel::exponential(2.0).unwrap();
        let qe = e.nonzero_prob(0.3).unwrap();
        assert!((qe - (1.0 - libm::exp(-0.6))).abs() < 1e-15);
        assert!((e.nonzero_prob_by_quadrature(0.3).unwrap() - qe).abs() < 1e-8);
        assert!(b.nonzero_prob(1e-12).unwrap() < 1e-10);
        assert!(b.nonzero_prob(0.0).is_err());
        assert!(b.nonzero_prob(-1.0).is_err());
    }

    #[test]
    fn invert_q_examples() {
        let b = RenewalModel::beta_one_theta(3.0).unwrap();
        let theta = b.invert_q(0.3439, 0.1).unwrap();
        assert!((theta - 3.0).abs() < 1e-8);
        // boundary of the parameter map, outside the default box
        let zero = b.invert_q(0.1, 0.1).unwrap();
        assert!(zero.abs() < 1e-12);
        assert!(!b.param_box().contains(zero));
        assert!(b.invert_q(0.0, 0.1).is_err());
        assert!(b.invert_q(1.0, 0.1).is_err());
    }

    #[test]
    fn bisection_agrees_with_closed_forms() {
        let b = RenewalModel::beta_one_theta(3.0).unwrap();
        let q = b.nonzero_prob(0.05).unwrap();
        assert!((b.invert_q_by_bisection(q, 0.05).unwrap() - 3.0).abs() < 1e-9);
        let e = RenewalModel::exponential(4.0).unwrap();
        let q = e.nonzero_prob(0.1).unwrap();
        let closed = -libm::log1p(-q) / 0.1;
        assert!((e.invert_q(q, 0.1).unwrap() - closed).abs() < 1e-9);
    }

    #[test]
    fn bisection_reports_missing_bracket() {
        // Beta windows of length >= 1 always contain a renewal: q is flat at 1
        let b = RenewalModel::beta_one_theta(3.0).unwrap();
        assert!(matches!(b.invert_q(0.5, 1.5), Err(Error::NoBracket { .. })));
    }

    #[test]
    fn mixture_pdf_examples() {
        let f = JumpMixture::benchmark();
        assert!((f.pdf(1.0) - 0.625).abs() < 1e-15);
        assert!((f.pdf(0.0) - (0.125 + 0.5 * libm::exp(-2.0))).abs() < 1e-15);
        assert!((f.pdf(0.0) - 0.1927).abs() < 1e-4);
        let u = JumpMixture::new(alloc::vec![MixtureComponent {
            kind: JumpKind::Uniform { lo: -2.0, hi: 2.0 },
            weight: 1.0,
        }])
        .unwrap();
        assert_eq!(u.pdf(3.0), 0.0);
    }

    #[test]
    fn mixture_normalized() {
        let f = JumpMixture::benchmark();
        // split at the kinks so the trapezoid rule sees smooth pieces, and
        // read the jumps of the uniform part from the inside of each piece
        let knots = [-40.0, -2.0, 1.0, 2.0, 40.0];
        let mass: f64 = knots
            .windows(2)
            .map(|w| {
                let inside = |x: f64| f.pdf(x.clamp(w[0] + 1e-12, w[1] - 1e-12));
                richardson(inside, w[0], w[1], 1 << 14)
            })
            .sum();
        assert!((mass - 1.0).abs() < 1e-8, "mass {mass}");
        assert!((f.cdf(40.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn mixture_rejects_bad_weights() {
        let c = |w| MixtureComponent {
            kind: JumpKind::Laplace {
                loc: 0.0,
                scale: 1.0,
            },
            weight: w,
        };
        assert!(JumpMixture::new(alloc::vec![c(0.4), c(0.4)]).is_err());
        assert!(JumpMixture::new(alloc::vec![c(-0.5), c(1.5)]).is_err());
        assert!(JumpMixture::new(alloc::vec![]).is_err());
    }

    #[test]
    fn small_window_limit_beta() {
        let b = RenewalModel::beta_one_theta(3.0).unwrap();
        let d1 = b.small_window_limit();
        // F(x) = 1/2 at x = 1 - 2^(-1/3)
        let exact = 1.0 - libm::pow(0.5, 1.0 / 3.0);
        assert!(d1 <= exact && exact - d1 < 1.0 / 4096.0 + 1e-12);
    }
}
