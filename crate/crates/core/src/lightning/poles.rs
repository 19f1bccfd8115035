use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use crate::domain::{PrototypeSpec, DEFAULT_DELTA};
use crate::error::{domain, Result};

/// Poles `p_j = −C e^{−σ j/√N₁}`, `j = 0..=N₁`, geometrically clustered at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct PoleSet {
    pub c: f64,
    pub sigma: f64,
    pub n1: usize,
    pub poles: Vec<f64>,
}

pub fn cluster_poles(c: f64, sigma: f64, n1: usize) -> Result<PoleSet> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(domain("outermost pole magnitude C must be positive"));
    }
    if !(sigma > 0.0) || !sigma.is_finite() {
        return Err(domain("clustering parameter sigma must be positive"));
    }
    if n1 < 1 {
        return Err(domain("N1 must be at least 1"));
    }
    let root = (n1 as f64).sqrt();
    let poles = (0..=n1)
        .map(|j| -c * (-sigma * j as f64 / root).exp())
        .collect();
    Ok(PoleSet {
        c,
        sigma,
        n1,
        poles,
    })
}

impl PoleSet {
    pub fn len(&self) -> usize {
        self.poles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poles.is_empty()
    }
}

/// `π√(2−β)/√α`, the clustering parameter that balances truncation and
/// quadrature errors.
pub fn sigma_opt(alpha: f64, beta: f64) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(domain("alpha must be positive"));
    }
    if !(0.0..2.0).contains(&beta) {
        return Err(domain("beta must lie in [0, 2)"));
    }
    Ok(PI * (2.0 - beta).sqrt() / alpha.sqrt())
}

/// `σ_opt/σ`.
pub fn eta(alpha: f64, beta: f64, sigma: f64) -> Result<f64> {
    if !(sigma > 0.0) {
        return Err(domain("sigma must be positive"));
    }
    Ok(sigma_opt(alpha, beta)? / sigma)
}

/// Default polynomial degree `⌈1.3√N₁⌉`.
pub fn default_n2(n1: usize) -> usize {
    (1.3 * (n1 as f64).sqrt()).ceil() as usize
}

/// Rectangular-rule discretization of the transformed integrals: nodes
/// `t_j = jh − T`, `j = 0..=N_t`, with `y_j = C e^{t_j/α}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscretizationPlan {
    pub alpha: f64,
    pub sigma: f64,
    pub c: f64,
    pub n1: usize,
    pub h: f64,
    pub t: f64,
    pub kappa: f64,
    pub ell: usize,
    pub nt: usize,
    pub delta: f64,
}

impl DiscretizationPlan {
    pub fn new(spec: &PrototypeSpec, sigma: f64, n1: usize, c: f64) -> Result<Self> {
        cluster_poles(c, sigma, n1)?;
        let alpha = spec.alpha;
        let ell = spec.ell();
        let h = sigma * alpha / (n1 as f64).sqrt();
        let t = n1 as f64 * h;
        let kappa = alpha / (ell as f64 + 1.0 - alpha);
        let nt = ((kappa + 1.0) * n1 as f64).ceil() as usize;
        Ok(Self {
            alpha,
            sigma,
            c,
            n1,
            h,
            t,
            kappa,
            ell,
            nt: nt.max(n1),
            delta: DEFAULT_DELTA,
        })
    }

    /// Node `t_j = jh − T` in the quadrature's own (innermost-first) order.
    pub fn node(&self, j: usize) -> f64 {
        j as f64 * self.h - self.t
    }

    /// Pole `−C e^{t_j/α}` attached to node `j`; `j = N₁ − i` for canonical index `i`.
    pub fn pole(&self, j: usize) -> f64 {
        -self.c * (self.node(j) / self.alpha).exp()
    }

    /// Poles beyond `C`, `j = N₁+1..=N_t`, ordered outward.
    pub fn tail_poles(&self) -> Vec<f64> {
        (self.n1 + 1..=self.nt).map(|j| self.pole(j)).collect()
    }

    pub fn matches(&self, poles: &PoleSet) -> bool {
        let h = self.sigma * self.alpha / (poles.n1 as f64).sqrt();
        poles.n1 == self.n1
            && poles.sigma == self.sigma
            && poles.c == self.c
            && (h - self.h).abs() <= 1e-15 * h
    }
}
