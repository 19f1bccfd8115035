//! Branch-cut integral representations of `z^α` and `z^α log z`, evaluated by
//! adaptive quadrature after the substitution `y = e^t`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::gk;
use crate::domain::lagrange_eval;
use crate::error::{domain, Error, Result};
use crate::math::{cos_pi, is_integer, parity_sign, sin_pi};

const ABS_TOL: f64 = 1e-13;
const MAX_PANELS: usize = 4000;

/// `z^α` through the interpolation-corrected Stieltjes integral with nodes `s_1..s_ℓ`.
pub fn integral_rep_pow(z: Complex64, alpha: f64, ell: usize, nodes: &[f64]) -> Result<Complex64> {
    check(z, alpha, ell, nodes)?;
    if z == Complex64::new(0.0, 0.0) {
        return Ok(z);
    }
    let values: Vec<Complex64> = nodes
        .iter()
        .map(|&s| Complex64::new(s.powf(alpha - 1.0), 0.0))
        .collect();
    let lagrange = z * lagrange_eval(nodes, &values, z)?;
    let sin = sin_pi(alpha);
    if sin == 0.0 {
        return Ok(lagrange);
    }
    let scale = sin * parity_sign(ell) / PI;
    let integral = transformed_integral(z, alpha, ell, nodes, |_| scale)?;
    Ok(integral + lagrange)
}

/// `z^α log z` through the two-kernel representation with nodes `s_1..s_ℓ`.
pub fn integral_rep_pow_log(
    z: Complex64,
    alpha: f64,
    ell: usize,
    nodes: &[f64],
) -> Result<Complex64> {
    check(z, alpha, ell, nodes)?;
    if z == Complex64::new(0.0, 0.0) {
        return Ok(z);
    }
    let values: Vec<Complex64> = nodes
        .iter()
        .map(|&s| Complex64::new(s.powf(alpha - 1.0) * s.ln(), 0.0))
        .collect();
    let lagrange = z * lagrange_eval(nodes, &values, z)?;
    let sign = parity_sign(ell);
    let (sin, cos) = (sin_pi(alpha) * sign / PI, cos_pi(alpha) * sign);
    // log y = t under the substitution
    let integral = transformed_integral(z, alpha, ell, nodes, |t| sin * t + cos)?;
    Ok(integral + lagrange)
}

fn check(z: Complex64, alpha: f64, ell: usize, nodes: &[f64]) -> Result<()> {
    if z.im == 0.0 && z.re < 0.0 {
        return Err(Error::BranchCut { re: z.re });
    }
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(domain("alpha must be positive"));
    }
    if nodes.len() != ell {
        return Err(domain("expected exactly ell interpolation nodes"));
    }
    if nodes.iter().any(|&s| !(s > 0.0)) {
        return Err(domain("interpolation nodes must be positive"));
    }
    if ell == 0 {
        if alpha >= 1.0 {
            return Err(domain("ell = 0 requires 0 < alpha < 1"));
        }
    } else if (ell as f64) < alpha.floor() {
        return Err(domain("ell must be at least floor(alpha)"));
    }
    if is_integer(alpha) && (ell as f64) < alpha {
        return Err(domain("integer alpha needs ell >= alpha"));
    }
    Ok(())
}

/// `∫_ℝ w(t)·z e^{αt}/(e^t+z)·Π_k (z−s_k)/(e^t+s_k) dt` on a window grown until
/// the exponential tail envelopes fall below tolerance.
fn transformed_integral<W: Fn(f64) -> f64>(
    z: Complex64,
    alpha: f64,
    ell: usize,
    nodes: &[f64],
    weight: W,
) -> Result<Complex64> {
    let f = |t: f64| {
        let y = t.exp();
        let mut v = z * (alpha * t).exp() / (z + y) * weight(t);
        for &s in nodes {
            v *= (z - s) / (y + s);
        }
        v
    };
    let scale = z.norm().powf(alpha).max(1.0);
    let tol = ABS_TOL * scale;
    let right_rate = ell as f64 + 1.0 - alpha;
    let t0 = z.norm().ln();
    let mut a = t0.min(0.0) - 8.0;
    let mut b = t0.max(0.0) + 8.0;
    let mut step = 8.0;
    for _ in 0..40 {
        let left_ok = f(a).norm() / alpha <= 0.1 * tol;
        let right_ok = f(b).norm() / right_rate <= 0.1 * tol;
        if left_ok && right_ok {
            let panels = ((b - a) / 2.0).ceil() as usize;
            let q = gk::integrate(f, a, b, panels, tol, 0.0, MAX_PANELS);
            if !q.converged {
                return Err(Error::Accuracy {
                    achieved: q.error,
                    requested: tol,
                });
            }
            return Ok(q.value);
        }
        step *= 2.0;
        if !left_ok {
            a -= step;
        }
        if !right_ok {
            b += step;
        }
    }
    Err(Error::Accuracy {
        achieved: f(a).norm().max(f(b).norm()),
        requested: tol,
    })
}
