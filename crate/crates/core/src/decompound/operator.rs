use alloc::vec::Vec;

use libm::fabs;

use crate::error::{Error, Result};
use crate::fft;

/// L1 bound on the iterates of [`fixed_point_inverse`].
pub const DEFAULT_L1_BOUND: f64 = 1.645;

/// Function values on the zero-centred grid `x_i = (i - n/2) step`, `n` a power of two.
#[derive(Debug, Clone, PartialEq)]
pub struct GridDensity {
    step: f64,
    values: Vec<f64>,
}

impl GridDensity {
    pub fn new(step: f64, values: Vec<f64>) -> Result<Self> {
        crate::error::ensure_positive("step", step)?;
        if !values.len().is_power_of_two() || values.len() < 2 {
            return Err(Error::InvalidLength {
                len: values.len(),
                min: 2,
            });
        }
        Ok(GridDensity { step, values })
    }

    pub fn from_fn(len: usize, step: f64, f: impl Fn(f64) -> f64) -> Result<Self> {
        let half = (len / 2) as f64;
        Self::new(
            step,
            (0..len).map(|i| f((i as f64 - half) * step)).collect(),
        )
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn node(&self, i: usize) -> f64 {
        (i as f64 - (self.len() / 2) as f64) * self.step
    }

    pub fn mass(&self) -> f64 {
        self.step * self.values.iter().sum::<f64>()
    }

    pub fn l1_norm(&self) -> f64 {
        self.step * self.values.iter().map(|v| fabs(*v)).sum::<f64>()
    }

    pub fn l1_distance(&self, other: &GridDensity) -> Result<f64> {
        self.check_same(other)?;
        Ok(self.step
            * self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| fabs(a - b))
                .sum::<f64>())
    }

    fn check_same(&self, other: &GridDensity) -> Result<()> {
        if self.len() != other.len() || self.step != other.step {
            return Err(Error::GridMismatch);
        }
        Ok(())
    }

    /// `(f * g)(x_i)` as a Riemann sum, kept on the same grid.
    pub fn convolve(&self, other: &GridDensity) -> Result<GridDensity> {
        self.check_same(other)?;
        let full = fft::convolve(&self.values, &other.values);
        let offset = self.len() / 2;
        let values = (0..self.len())
            .map(|i| self.step * full[i + offset])
            .collect();
        Ok(GridDensity {
            step: self.step,
            values,
        })
    }
}

/// `P[g] = sum_m p_m g^{*m}`. Mass that leaves the grid is lost, not renormalised.
pub fn apply_compounding(g: &GridDensity, p: &[f64]) -> Result<GridDensity> {
    let last = p.iter().rposition(|w| *w != 0.0).map_or(0, |i| i + 1);
    let mut acc: Vec<f64> = g
        .values
        .iter()
        .map(|v| p.first().copied().unwrap_or(0.0) * v)
        .collect();
    let mut power = g.clone();
    for &w in p.iter().take(last).skip(1) {
        power = power.convolve(g)?;
        for (a, v) in acc.iter_mut().zip(&power.values) {
            *a += w * v;
        }
    }
    Ok(GridDensity {
        step: g.step,
        values: acc,
    })
}

/// `K` steps of `h -> P_in + h - P[h]` from `h_0 = P_in`.
///
/// Fails with [`Error::ContractionFailure`] as soon as an iterate has L1 norm
/// above `l1_bound`.
pub fn fixed_point_inverse(
    p_in: &GridDensity,
    p: &[f64],
    order: usize,
    l1_bound: f64,
) -> Result<GridDensity> {
    let mut h = p_in.clone();
    for iteration in 1..=order {
        let ph = apply_compounding(&h, p)?;
        for ((hv, pv), phv) in h.values.iter_mut().zip(&p_in.values).zip(&ph.values) {
            *hv += pv - phv;
        }
        let l1_norm = h.l1_norm();
        if l1_norm > l1_bound {
            return Err(Error::ContractionFailure {
                iteration,
                l1_norm,
                bound: l1_bound,
            });
        }
    }
    Ok(h)
}
