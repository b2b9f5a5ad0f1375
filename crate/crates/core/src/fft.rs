//! Radix-2 FFT and linear convolution of real sequences.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::ops::{Add, Mul, Sub};

use libm::{cos, sin};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl Complex {
    pub const fn new(re: f64, im: f64) -> Self {
        Complex { re, im }
    }
}

impl Add for Complex {
    type Output = Complex;
    fn add(self, o: Complex) -> Complex {
        Complex::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for Complex {
    type Output = Complex;
    fn sub(self, o: Complex) -> Complex {
        Complex::new(self.re - o.re, self.im - o.im)
    }
}

impl Mul for Complex {
    type Output = Complex;
    fn mul(self, o: Complex) -> Complex {
        Complex::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

/// In-place FFT; `inverse` applies the `1/n` normalization.
///
/// Panics if the length is not a power of two.
pub fn fft_in_place(data: &mut [Complex], inverse: bool) {
    let n = data.len();
    assert!(n.is_power_of_two(), "fft length must be a power of two");
    if n <= 1 {
        return;
    }
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            data.swap(i, j);
        }
    }
    let sign = if inverse { 1.0 } else { -1.0 };
    let mut len = 2;
    while len <= n {
        let ang = sign * 2.0 * PI / len as f64;
        let half = len / 2;
        // twiddles computed directly to avoid drift from repeated products
        let tw: Vec<Complex> = (0..half)
            .map(|k| Complex::new(cos(ang * k as f64), sin(ang * k as f64)))
            .collect();
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let a = data[start + k];
                let b = data[start + k + half] * tw[k];
                data[start + k] = a + b;
                data[start + k + half] = a - b;
            }
        }
        len <<= 1;
    }
    if inverse {
        let s = 1.0 / n as f64;
        for d in data.iter_mut() {
            d.re *= s;
            d.im *= s;
        }
    }
}

const DIRECT_CUTOFF: usize = 64;

/// Full linear convolution, length `a.len() + b.len() - 1`.
pub fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let out_len = a.len() + b.len() - 1;
    if a.len().min(b.len()) <= DIRECT_CUTOFF {
        return convolve_direct(a, b);
    }
    let n = out_len.next_power_of_two();
    // pack a into the real part and b into the imaginary part, one forward FFT
    let mut buf = vec![Complex::default(); n];
    for (i, v) in a.iter().enumerate() {
        buf[i].re = *v;
    }
    for (i, v) in b.iter().enumerate() {
        buf[i].im = *v;
    }
    fft_in_place(&mut buf, false);
    let mut prod = vec![Complex::default(); n];
    for k in 0..n {
        let z = buf[k];
        let zc = buf[(n - k) % n];
        let zc = Complex::new(zc.re, -zc.im);
        // A = (z + conj z[-k]) / 2, B = (z - conj z[-k]) / 2i
        let fa = Complex::new(0.5 * (z.re + zc.re), 0.5 * (z.im + zc.im));
        let d = z - zc;
        let fb = Complex::new(0.5 * d.im, -0.5 * d.re);
        prod[k] = fa * fb;
    }
    fft_in_place(&mut prod, true);
    prod.truncate(out_len);
    prod.into_iter().map(|c| c.re).collect()
}

pub fn convolve_direct(a: &[f64], b: &[f64]) -> Vec<f64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
