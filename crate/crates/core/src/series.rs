//! Truncated power series with real coefficients.
//!
//! Index `i` holds the coefficient of `z^i`. All products are truncated to the
//! length of the left operand.

use alloc::vec;
use alloc::vec::Vec;

/// `a * b` truncated to `len` coefficients.
pub fn mul_trunc(a: &[f64], b: &[f64], len: usize) -> Vec<f64> {
    let mut out = vec![0.0; len];
    for (i, x) in a.iter().enumerate().take(len) {
        if *x == 0.0 {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `outer(inner(z))` truncated to `len` coefficients, where `outer[0]` is the
/// constant term. Requires `inner[0] == 0` for the truncation to be exact.
pub fn compose_trunc(outer: &[f64], inner: &[f64], len: usize) -> Vec<f64> {
    // Horner: outer_0 + inner (outer_1 + inner (outer_2 + ...))
    let mut acc = vec![0.0; len];
    for c in outer.iter().rev() {
        acc = mul_trunc(&acc, inner, len);
        if len > 0 {
            acc[0] += c;
        }
    }
    acc
}

/// Evaluates `sum_i coeffs[i] z^i`.
pub fn eval(coeffs: &[f64], z: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * z + c)
}
