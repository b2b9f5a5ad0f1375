//! Composite trapezoid quadrature on uniform grids.

use alloc::vec::Vec;

/// Composite trapezoid rule for `f` on `[a, b]` with `steps` intervals.
pub fn trapezoid<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, steps: usize) -> f64 {
    let steps = steps.max(1);
    let h = (b - a) / steps as f64;
    let mut acc = 0.5 * (f(a) + f(b));
    for i in 1..steps {
        acc += f(a + i as f64 * h);
    }
    acc * h
}

/// Trapezoid rule for samples already laid out on a uniform grid of mesh `h`.
pub fn trapezoid_samples(values: &[f64], h: f64) -> f64 {
    match values {
        [] | [_] => 0.0,
        [first, inner @ .., last] => h * (0.5 * (first + last) + inner.iter().sum::<f64>()),
    }
}

/// Running trapezoid integral; element `i` is the integral over the first `i` intervals.
pub fn cumulative_trapezoid(values: &[f64], h: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            acc += 0.5 * h * (values[i - 1] + v);
        }
        out.push(acc);
    }
    out
}
