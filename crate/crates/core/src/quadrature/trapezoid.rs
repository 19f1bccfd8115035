//! Trapezoidal rule on the real line with Euler–Maclaurin tail completion.

use super::gk;
use crate::error::{domain, Error, Result};
use crate::math::derivatives;
#[allow(unused_imports)]
use num_traits::Float;

/// `B_2, B_4, …, B_10`.
const BERNOULLI: [f64; 5] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0];

/// Largest supported Euler–Maclaurin order.
pub const MAX_EM_ORDER: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapezoidResult {
    pub value: f64,
    pub h: f64,
    pub n_max: usize,
    /// Magnitude of the first omitted correction plus the tail-integral error.
    pub tail_estimate: f64,
}

/// `h Σ_{|n| ≤ n_max} f(nh)` completed on both sides by
/// `∫_X^∞ f − (h/2) f(X) − Σ_{k ≤ em_order} B_{2k} h^{2k}/(2k)! f^{(2k−1)}(X)`, `X = n_max·h`.
pub fn trapezoid_real_line<F: Fn(f64) -> f64>(
    f: F,
    h: f64,
    n_max: usize,
    em_order: usize,
) -> Result<TrapezoidResult> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(domain("step h must be positive"));
    }
    if n_max < 1 {
        return Err(domain("n_max must be at least 1"));
    }
    if em_order > MAX_EM_ORDER {
        return Err(domain("em_order must lie in 0..=4"));
    }
    let mut sum = f(0.0);
    for n in 1..=n_max {
        let x = n as f64 * h;
        sum += f(x) + f(-x);
    }
    let x_cut = n_max as f64 * h;
    let right = tail(&f, h, x_cut, em_order)?;
    let left = tail(&|x: f64| f(-x), h, x_cut, em_order)?;
    Ok(TrapezoidResult {
        value: h * sum + right.0 + left.0,
        h,
        n_max,
        tail_estimate: right.1 + left.1,
    })
}

/// Completion of `h Σ_{n > N} f(nh)` and its error estimate.
fn tail<F: Fn(f64) -> f64>(f: &F, h: f64, x: f64, order: usize) -> Result<(f64, f64)> {
    let (integral, int_err, ok) = gk::integrate_real(
        |u: f64| f(x / u) * x / (u * u),
        0.0,
        1.0,
        4,
        1e-16,
        1e-14,
        2000,
    );
    if !ok {
        return Err(Error::Accuracy {
            achieved: int_err,
            requested: 1e-14 * integral.abs().max(1e-16),
        });
    }
    let max_deriv = 2 * order + 1;
    let step = 0.05 * x.max(h);
    let d = derivatives(f, x, step, order + 3, max_deriv);
    let mut value = integral - 0.5 * h * d[0];
    let mut factorial = 1.0;
    let mut last = f64::INFINITY;
    let mut next = 0.0;
    for k in 1..=order + 1 {
        factorial *= ((2 * k - 1) * (2 * k)) as f64;
        let term = BERNOULLI[k - 1] * h.powi(2 * k as i32) / factorial * d[2 * k - 1];
        if k <= order {
            if term.abs() > last && term.abs() > 1e-300 {
                return Err(Error::Accuracy {
                    achieved: term.abs(),
                    requested: last,
                });
            }
            last = term.abs();
            value -= term;
        } else {
            next = term.abs();
        }
    }
    Ok((value, next + int_err))
}
