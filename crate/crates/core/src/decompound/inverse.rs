use alloc::vec;
use alloc::vec::Vec;

use libm::{exp, fabs};

use crate::error::{Error, Result};
use crate::series;

/// Coefficients `l_1..l_{K+1}` of the degree-`K+1` inverse series.
///
/// Writing `P(z) = sum p_m z^m`, the iteration `h -> P[f] + h - P[h]` started
/// at `h_0 = P[f]` is carried out on power series in `z = P[f]`:
///
/// `Q_0(z) = z`, `Q_{k+1}(z) = z + Q_k(z) - P(Q_k(z))`,
///
/// every product truncated at degree `K+1`. After `K` steps `Q_K` has the
/// coefficients returned here; the first step gives `l_1 = 2 - p_1` and
/// `l_m = -p_m` for `m >= 2`.
pub fn correction_coeffs(p: &[f64], order: usize) -> Result<Vec<f64>> {
    let degree = order + 1;
    if p.len() < degree {
        return Err(Error::CoefficientsTooShort {
            needed: degree,
            got: p.len(),
        });
    }
    let len = degree + 1;
    let mut outer = vec![0.0; len];
    outer[1..].copy_from_slice(&p[..degree]);

    let mut q = vec![0.0; len];
    q[1] = 1.0;
    for _ in 0..order {
        let pq = series::compose_trunc(&outer, &q, len);
        for i in 0..len {
            q[i] += -pq[i];
        }
        q[1] += 1.0;
    }
    Ok(q[1..].to_vec())
}

/// `max |Q(P(z)) - z|` over `points`, with `P` from all of `p` and `Q` from `l`.
pub fn inversion_residual(p: &[f64], l: &[f64], points: &[f64]) -> f64 {
    let mut p_series = vec![0.0];
    p_series.extend_from_slice(p);
    let mut l_series = vec![0.0];
    l_series.extend_from_slice(l);
    points
        .iter()
        .map(|&z| fabs(series::eval(&l_series, series::eval(&p_series, z)) - z))
        .fold(0.0, f64::max)
}

/// Contraction constant `2 O (exp(2 tau(0) delta) - 1) + 2 tau(0) delta`.
pub fn contraction_constant(tau_at_zero: f64, delta: f64, l1_bound: f64) -> f64 {
    let x = 2.0 * tau_at_zero * delta;
    2.0 * l1_bound * (exp(x) - 1.0) + x
}
