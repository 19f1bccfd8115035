//! Closed-form residues and the rectangular-rule sums they come from.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::poles::{DiscretizationPlan, PoleSet};
use crate::domain::{chebyshev_nodes, lagrange_eval, PrototypeSpec, TargetKind};
use crate::error::{domain, Result};
use crate::math::{cos_pi, parity_sign, sin_pi};

/// `ā_j = h p_j |p_j|^α sin(απ)/(απ)`.
pub fn analytic_residues_pow(
    plan: &DiscretizationPlan,
    poles: &PoleSet,
    alpha: f64,
) -> Result<Vec<Complex64>> {
    consistent(plan, poles, alpha)?;
    let f = sin_pi(alpha) / (alpha * PI);
    Ok(poles
        .poles
        .iter()
        .map(|&p| Complex64::new(plan.h * p * (-p).powf(alpha) * f, 0.0))
        .collect())
}

/// `ã_j = h p_j |p_j|^α [sin(απ)·t_j/(α²π) + sin(απ) log C/(απ) + cos(απ)/α]`
/// with `t_j = α log(|p_j|/C)`.
pub fn analytic_residues_pow_log(
    plan: &DiscretizationPlan,
    poles: &PoleSet,
    alpha: f64,
) -> Result<Vec<Complex64>> {
    consistent(plan, poles, alpha)?;
    Ok(poles
        .poles
        .iter()
        .map(|&p| Complex64::new(log_residue(plan, p), 0.0))
        .collect())
}

fn log_residue(plan: &DiscretizationPlan, p: f64) -> f64 {
    let alpha = plan.alpha;
    let (s, c) = (sin_pi(alpha), cos_pi(alpha));
    let t = alpha * (-p / plan.c).ln();
    let bracket = s * plan.c.ln() / (alpha * PI) + c / alpha;
    plan.h * p * (-p).powf(alpha) * (s * t / (alpha * alpha * PI) + bracket)
}

fn pow_residue(plan: &DiscretizationPlan, p: f64) -> f64 {
    plan.h * p * (-p).powf(plan.alpha) * sin_pi(plan.alpha) / (plan.alpha * PI)
}

/// Residue of the prototype's quadrature sum at a pole `p` (inner or tail).
pub(crate) fn residue_at(plan: &DiscretizationPlan, kind: TargetKind, p: f64) -> f64 {
    match kind {
        TargetKind::Pow => pow_residue(plan, p),
        TargetKind::PowLog => log_residue(plan, p),
    }
}

fn consistent(plan: &DiscretizationPlan, poles: &PoleSet, alpha: f64) -> Result<()> {
    if alpha != plan.alpha || !plan.matches(poles) {
        return Err(domain("discretization plan does not match the pole set"));
    }
    Ok(())
}

/// Weights of the two raw sums `r^{(1)}` and `r^{(0)}` in the prototype's
/// representation.
fn sum_weights(plan: &DiscretizationPlan, kind: TargetKind) -> (f64, f64) {
    let alpha = plan.alpha;
    let sign = parity_sign(plan.ell);
    match kind {
        TargetKind::Pow => (0.0, sin_pi(alpha) / (sign * alpha * PI)),
        TargetKind::PowLog => (
            sin_pi(alpha) / (sign * alpha * alpha * PI),
            sin_pi(alpha) * plan.c.ln() / (sign * alpha * PI) + cos_pi(alpha) / (sign * alpha),
        ),
    }
}

/// Raw rectangular sum `h Σ_{j=0}^{N_t} z C^α t_j^l e^{t_j}/(y_j+z) Π_k (z−s_k)/(y_j+s_k)`.
pub fn rectangular_sum(plan: &DiscretizationPlan, z: Complex64, l: u32) -> Complex64 {
    let nodes = chebyshev_nodes(plan.ell, plan.delta);
    let ca = plan.c.powf(plan.alpha);
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..=plan.nt {
        let t = plan.node(j);
        let y = plan.c * (t / plan.alpha).exp();
        let mut v = z * ca * t.powi(l as i32) * t.exp() / (z + y);
        for &s in &nodes {
            v *= (z - s) / (y + s);
        }
        acc += v;
    }
    acc * plan.h
}

/// The same sum regrouped node by node into `a_j/(z−p_j)` plus a polynomial of
/// degree `ℓ`, using `z/(z−p) = 1 + p/(z−p)` and the divided difference of `Π`.
pub fn regrouped_sum(plan: &DiscretizationPlan, z: Complex64, l: u32) -> Complex64 {
    let nodes = chebyshev_nodes(plan.ell, plan.delta);
    let sign = parity_sign(plan.ell);
    let pi_z: Complex64 = nodes.iter().map(|&s| z - s).product();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..=plan.nt {
        let p = plan.pole(j);
        let w = (-p).powf(plan.alpha) * plan.h * plan.node(j).powi(l as i32);
        let dp: f64 = nodes.iter().map(|&s| s - p).product();
        let pole_part = sign * p * w / (z - p);
        // (Π(z) − Π(p))/(z − p) = Σ_m Π_{k<m}(p − s_k) Π_{k>m}(z − s_k)
        let mut divided = Complex64::new(0.0, 0.0);
        for m in 0..nodes.len() {
            let mut term = Complex64::new(1.0, 0.0);
            for (k, &s) in nodes.iter().enumerate() {
                if k < m {
                    term *= p - s;
                } else if k > m {
                    term *= z - s;
                }
            }
            divided += term;
        }
        let poly_part = w * (pi_z / dp + p * divided / dp);
        acc += pole_part + poly_part;
    }
    acc
}

/// Direct evaluation of the truncated, discretized representation of the
/// target `g(z)·z^α` (or `g(z)·z^α log z`), Lagrange term included.
pub fn quadrature_sum(
    plan: &DiscretizationPlan,
    spec: &PrototypeSpec,
    z: Complex64,
) -> Result<Complex64> {
    if spec.alpha != plan.alpha || spec.ell() != plan.ell {
        return Err(domain("discretization plan does not match the target"));
    }
    let zero = Complex64::new(0.0, 0.0);
    if z == zero {
        return Ok(zero);
    }
    let (w1, w0) = sum_weights(plan, spec.kind);
    let mut v = zero;
    if w0 != 0.0 {
        v += rectangular_sum(plan, z, 0) * w0;
    }
    if w1 != 0.0 {
        v += rectangular_sum(plan, z, 1) * w1;
    }
    v += lagrange_term(plan, spec.kind, z)?;
    Ok(if spec.g.is_one() {
        v
    } else {
        spec.g.eval(z) * v
    })
}

/// `z·L[z^{α−1}]` or `z·L[z^{α−1} log z]` at the plan's Chebyshev nodes.
pub fn lagrange_term(
    plan: &DiscretizationPlan,
    kind: TargetKind,
    z: Complex64,
) -> Result<Complex64> {
    let nodes = chebyshev_nodes(plan.ell, plan.delta);
    let values: Vec<Complex64> = nodes
        .iter()
        .map(|&s| {
            let v = s.powf(plan.alpha - 1.0);
            Complex64::new(
                if kind == TargetKind::PowLog {
                    v * s.ln()
                } else {
                    v
                },
                0.0,
            )
        })
        .collect();
    Ok(z * lagrange_eval(&nodes, &values, z)?)
}
