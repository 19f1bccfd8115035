//! Numerical Fourier transforms `𝔉f(ξ) = ∫ f(x) e^{−2πixξ} dx` and decay-rate fits.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::gk;
use crate::error::{domain, Error, Result};
use crate::math::{derivatives, linear_fit};

/// Transforms below this magnitude are not resolved and are dropped from fits.
pub const RESOLUTION_FLOOR: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct FourierFit {
    pub slope: f64,
    pub intercept: f64,
    /// `(ξ, |𝔉f(ξ)|)` for every grid point, dropped ones included.
    pub samples: Vec<(f64, f64)>,
    /// Grid points whose transform fell below [`RESOLUTION_FLOOR`].
    pub dropped: Vec<f64>,
}

/// `𝔉f(xi)` by Gauss–Kronrod panels no longer than a quarter period on
/// `[−X, X]`, plus a two-term integration-by-parts tail on each side.
pub fn fourier_transform<F: Fn(f64) -> f64>(f: &F, xi: f64, abs_tol: f64) -> Result<Complex64> {
    if !(xi > 0.0) || !xi.is_finite() {
        return Err(domain("frequency must be positive"));
    }
    let omega = 2.0 * PI * xi;
    let iw = Complex64::new(0.0, omega);
    let deriv = |x: f64| derivatives(f, x, 0.05 * x.abs().max(1.0), 4, 2);
    // grow X until the first omitted tail term is small
    let mut x_cut = 8.0;
    loop {
        let third = deriv(x_cut)[2].abs() + deriv(-x_cut)[2].abs();
        if third / omega.powi(3) < 0.1 * abs_tol || x_cut > 1e7 {
            break;
        }
        x_cut *= 2.0;
    }
    let panels = (x_cut * 2.0 * 4.0 * xi).ceil().max(1.0) as usize;
    let q = gk::integrate(
        |x| f(x) * Complex64::new(0.0, -omega * x).exp(),
        -x_cut,
        x_cut,
        panels,
        0.1 * abs_tol,
        0.0,
        panels * 4,
    );
    if !q.converged {
        return Err(Error::Accuracy {
            achieved: q.error,
            requested: abs_tol,
        });
    }
    let dr = deriv(x_cut);
    let dl = deriv(-x_cut);
    let er = Complex64::new(0.0, -omega * x_cut).exp();
    let right = er * (dr[0] / iw + dr[1] / (iw * iw));
    let left = -er.conj() * (dl[0] / iw + dl[1] / (iw * iw));
    Ok(q.value + right + left)
}

/// Least-squares slope of `ln(|𝔉f(ξ)|/ξ^{prefactor_power})` against `ξ`.
///
/// A transform behaving like `ξ^p e^{−2πaξ}` yields slope `−2πa` when
/// `prefactor_power = p`.
pub fn fourier_decay_fit<F: Fn(f64) -> f64>(
    f: F,
    xi_grid: &[f64],
    prefactor_power: i32,
) -> Result<FourierFit> {
    if xi_grid.len() < 4 {
        return Err(domain("decay fit needs at least 4 frequencies"));
    }
    if xi_grid.windows(2).any(|w| !(w[1] > w[0])) || !(xi_grid[0] > 0.0) {
        return Err(domain("frequency grid must be positive and increasing"));
    }
    let mut samples = Vec::with_capacity(xi_grid.len());
    let mut dropped = Vec::new();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for &xi in xi_grid {
        let mag = fourier_transform(&f, xi, 1e-2 * RESOLUTION_FLOOR)?.norm();
        samples.push((xi, mag));
        if mag < RESOLUTION_FLOOR {
            dropped.push(xi);
        } else {
            xs.push(xi);
            ys.push((mag / xi.powi(prefactor_power)).ln());
        }
    }
    if xs.len() < 3 {
        return Err(Error::Fit {
            usable: xs.len(),
            required: 3,
        });
    }
    let (slope, intercept) = linear_fit(&xs, &ys);
    Ok(FourierFit {
        slope,
        intercept,
        samples,
        dropped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lorentzian_transform_matches() {
        for xi in [0.2, 0.6, 1.0] {
            let v = fourier_transform(&|x: f64| 1.0 / (1.0 + x * x), xi, 1e-12).unwrap();
            let want = PI * (-2.0 * PI * xi).exp();
            assert!((v.re - want).abs() < 1e-10, "xi={xi} got {v} want {want}");
            assert!(v.im.abs() < 1e-10);
        }
    }

    #[test]
    fn gaussian_transform_matches() {
        let v = fourier_transform(&|x: f64| (-x * x).exp(), 0.5, 1e-14).unwrap();
        let want = PI.sqrt() * (-PI * PI * 0.25).exp();
        assert!((v.re - want).abs() < 1e-13);
    }

    #[test]
    fn fit_needs_four_points() {
        assert!(fourier_decay_fit(|x| 1.0 / (1.0 + x * x), &[0.2, 0.4, 0.6], 0).is_err());
    }
}
