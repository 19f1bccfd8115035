//! Small numerical helpers used across the crate.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

/// `sin(πx)` with exact zeros at integers.
pub fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round(); // r in [-1, 1]
    if r == r.trunc() {
        return 0.0;
    }
    let sign = if r < 0.0 { -1.0 } else { 1.0 };
    let a = r.abs();
    let a = if a > 0.5 { 1.0 - a } else { a };
    sign * (PI * a).sin()
}

/// `cos(πx)` with exact zeros at half-integers and exact `±1` at integers.
pub fn cos_pi(x: f64) -> f64 {
    let r = (x - 2.0 * (0.5 * x).round()).abs(); // r in [0, 1]
    if r == 0.0 {
        1.0
    } else if r == 1.0 {
        -1.0
    } else if r == 0.5 {
        0.0
    } else if r < 0.5 {
        (PI * r).cos()
    } else {
        -(PI * (1.0 - r)).cos()
    }
}

pub fn is_integer(x: f64) -> bool {
    x == x.trunc()
}

/// `(-1)^n`.
pub fn parity_sign(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Principal power `z^α` on the slit plane; `0^α = 0` for `α > 0`.
pub fn principal_pow(z: Complex64, alpha: f64) -> Complex64 {
    if z == Complex64::new(0.0, 0.0) {
        return Complex64::new(0.0, 0.0);
    }
    if is_integer(alpha) && alpha.abs() <= 64.0 {
        return z.powi(alpha as i32);
    }
    (z.ln() * alpha).exp()
}

/// Ordinary least squares of `y` on `x`: returns `(slope, intercept)`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
    }
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Finite-difference weights (Fornberg) for derivatives `0..=max_order` at `x0`
/// from samples at `nodes`. Entry `[m][i]` weights `f(nodes[i])` for `f^(m)(x0)`.
pub fn fd_weights(x0: f64, nodes: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Derivatives `f^(m)(x0)`, `m = 0..=max_order`, from a symmetric stencil of
/// `2 * half_width + 1` points spaced `step` apart.
pub fn derivatives<F: Fn(f64) -> f64>(
    f: F,
    x0: f64,
    step: f64,
    half_width: usize,
    max_order: usize,
) -> Vec<f64> {
    let hw = half_width as i64;
    let nodes: Vec<f64> = (-hw..=hw).map(|k| x0 + k as f64 * step).collect();
    let values: Vec<f64> = nodes.iter().map(|&x| f(x)).collect();
    let w = fd_weights(x0, &nodes, max_order);
    w.iter()
        .map(|row| row.iter().zip(&values).map(|(a, b)| a * b).sum())
        .collect()
}
