//! Polynomial bases orthonormal on a discrete sample set, built by Arnoldi
//! iteration on the multiplication-by-`z` operator.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;
use num_traits::Zero;

use crate::error::{domain, Error, Result};

/// Relative norm below which a new basis vector signals breakdown.
const BREAKDOWN_TOL: f64 = 1e-14;

/// Orthonormal polynomial basis `q_0..q_degree` in the variable
/// `w = (z − center)/scale`, defined by the recurrence
/// `H[k][k−1]·q_k = w·q_{k−1} − Σ_{j<k} H[j][k−1]·q_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthoBasis {
    pub degree: usize,
    /// `(degree+1) × degree` upper-Hessenberg table, row-major.
    pub hessenberg: Vec<Vec<Complex64>>,
    pub sample_points: Vec<Complex64>,
    pub center: Complex64,
    pub scale: f64,
}

/// Builds the basis with modified Gram–Schmidt plus one reorthogonalization
/// pass under `⟨u, v⟩ = (1/M) Σ conj(u_i) v_i`.
///
/// With `real_recurrence`, imaginary parts of the recurrence coefficients are
/// discarded; this is exact for conjugate-symmetric samples and a real center,
/// and makes the basis commute with conjugation to the last bit.
pub fn build_ortho_basis(
    samples: &[Complex64],
    degree: usize,
    center: Complex64,
    scale: f64,
    real_recurrence: bool,
) -> Result<OrthoBasis> {
    let m = samples.len();
    if m < degree + 1 {
        return Err(domain("basis needs at least degree + 1 samples"));
    }
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(domain("basis scale must be positive"));
    }
    if degree > 0 && samples.iter().all(|&z| z == samples[0]) {
        return Err(Error::Breakdown { degree: 1 });
    }
    let w: Vec<Complex64> = samples.iter().map(|&z| (z - center) / scale).collect();
    let mut q: Vec<Vec<Complex64>> = vec![vec![Complex64::new(1.0, 0.0); m]];
    let mut h = vec![vec![Complex64::zero(); degree]; degree + 1];
    let inner = |u: &[Complex64], v: &[Complex64]| -> Complex64 {
        u.iter()
            .zip(v)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            / m as f64
    };
    for k in 1..=degree {
        let mut v: Vec<Complex64> = w.iter().zip(&q[k - 1]).map(|(a, b)| a * b).collect();
        let start = inner(&v, &v).re.sqrt();
        for _pass in 0..2 {
            for (j, qj) in q.iter().enumerate() {
                let mut c = inner(qj, &v);
                if real_recurrence {
                    c = Complex64::new(c.re, 0.0);
                }
                h[j][k - 1] += c;
                for (vi, qi) in v.iter_mut().zip(qj) {
                    *vi -= c * qi;
                }
            }
        }
        let nv = inner(&v, &v).re.sqrt();
        if !(nv > BREAKDOWN_TOL * start) {
            return Err(Error::Breakdown { degree: k });
        }
        h[k][k - 1] = Complex64::new(nv, 0.0);
        for vi in v.iter_mut() {
            *vi /= nv;
        }
        q.push(v);
    }
    Ok(OrthoBasis {
        degree,
        hessenberg: h,
        sample_points: samples.to_vec(),
        center,
        scale,
    })
}

impl OrthoBasis {
    /// Values `q_0(z), …, q_degree(z)` by the stored recurrence.
    pub fn eval_basis(&self, z: Complex64) -> Vec<Complex64> {
        let w = (z - self.center) / self.scale;
        let mut q = Vec::with_capacity(self.degree + 1);
        q.push(Complex64::new(1.0, 0.0));
        for k in 1..=self.degree {
            let mut v = w * q[k - 1];
            for (j, qj) in q.iter().enumerate() {
                v -= self.hessenberg[j][k - 1] * qj;
            }
            q.push(v / self.hessenberg[k][k - 1]);
        }
        q
    }

    /// `Σ_k coeffs[k]·q_k(z)`.
    pub fn eval(&self, coeffs: &[Complex64], z: Complex64) -> Complex64 {
        self.eval_basis(z)
            .iter()
            .zip(coeffs)
            .map(|(q, c)| q * c)
            .sum()
    }

    /// Monomial coefficients in `z` of `Σ_k coeffs[k]·q_k`. Informational: the
    /// conversion is ill-conditioned for clustered samples, evaluation should
    /// always go through the recurrence.
    pub fn monomial_coefficients(&self, coeffs: &[Complex64]) -> Vec<Complex64> {
        let n = self.degree + 1;
        // basis polynomials in w
        let mut polys: Vec<Vec<Complex64>> = vec![{
            let mut p = vec![Complex64::zero(); n];
            p[0] = Complex64::new(1.0, 0.0);
            p
        }];
        for k in 1..n {
            let mut p = vec![Complex64::zero(); n];
            for i in 0..k {
                p[i + 1] += polys[k - 1][i];
            }
            for (j, qj) in polys.iter().enumerate() {
                let c = self.hessenberg[j][k - 1];
                for i in 0..n {
                    p[i] -= c * qj[i];
                }
            }
            let d = self.hessenberg[k][k - 1];
            for x in p.iter_mut() {
                *x /= d;
            }
            polys.push(p);
        }
        let mut in_w = vec![Complex64::zero(); n];
        for (p, c) in polys.iter().zip(coeffs) {
            for i in 0..n {
                in_w[i] += c * p[i];
            }
        }
        // w^i = (z − c)^i / s^i, expanded binomially
        let mut out = vec![Complex64::zero(); n];
        for (i, &a) in in_w.iter().enumerate() {
            let base = a / self.scale.powi(i as i32);
            let mut binom = 1.0;
            for (j, o) in out.iter_mut().enumerate().take(i + 1) {
                // coefficient of z^j in (z − c)^i
                *o += base * binom * (-self.center).powi((i - j) as i32);
                binom = binom * (i - j) as f64 / (j + 1) as f64;
            }
        }
        out
    }
}
