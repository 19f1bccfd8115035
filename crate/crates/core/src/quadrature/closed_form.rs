//! Exact trapezoid sums for `1/(1+x²)`, `1/(1+x²)²` and `sinc`, and the
//! Poisson-summation error predictor.

use core::f64::consts::PI;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, Result};

/// `h Σ 1/(1+(nh)²) = π coth(π/h)`.
pub fn closed_form_i1(h: f64) -> f64 {
    PI + e1_magnitude(h)
}

/// `π − closed_form_i1(h) = −2π/(e^{2π/h} − 1)`.
pub fn closed_form_e1(h: f64) -> f64 {
    -e1_magnitude(h)
}

fn e1_magnitude(h: f64) -> f64 {
    2.0 * PI / (2.0 * PI / h).exp_m1()
}

/// `h Σ 1/(1+(nh)²)² = (π²/2h)(coth²(π/h) − 1) + (π/2) coth(π/h)`.
pub fn closed_form_i2(h: f64) -> f64 {
    let x = 2.0 * PI / h;
    let q = 1.0 / x.exp_m1();
    let coth = 1.0 + 2.0 * q;
    // coth² − 1 = 4q(1+q)
    PI * PI / (2.0 * h) * 4.0 * q * (1.0 + q) + 0.5 * PI * coth
}

/// `π/2 − closed_form_i2(h) = −h^{−1}/(e^{2π/h}−1)·[2π² e^{2π/h}/(e^{2π/h}−1) + πh]`.
pub fn closed_form_e2(h: f64) -> f64 {
    let x = 2.0 * PI / h;
    let q = 1.0 / x.exp_m1();
    -(q / h) * (2.0 * PI * PI * x.exp() * q + PI * h)
}

/// `h Σ f(nh)` for `f(x) = sin(2πx)/(2πx)`, from the sawtooth closed form.
pub fn closed_form_sinc(h: f64) -> Result<f64> {
    if !(h > 0.0) || !h.is_finite() {
        return Err(domain("step h must be positive"));
    }
    Ok(if h < 1.0 {
        0.5
    } else if h == h.trunc() {
        h
    } else {
        0.5 + h.floor()
    })
}

/// Decay data `|𝔉f(ξ)| ≤ B(|ξ|^{m0−1} + 1) e^{−2πa|ξ|}` of a Fourier transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourierDecayProfile {
    pub a: f64,
    pub m0: u32,
    pub b: f64,
    /// Prefactor of the higher-order term; defaults to `b` when `None`.
    pub b_tilde: Option<f64>,
}

impl FourierDecayProfile {
    pub fn new(a: f64, m0: u32, b: f64) -> Result<Self> {
        if !(a > 0.0) || m0 < 1 || !(b > 0.0) {
            return Err(domain("decay profile needs a > 0, m0 >= 1, B > 0"));
        }
        Ok(Self {
            a,
            m0,
            b,
            b_tilde: None,
        })
    }

    pub fn with_b_tilde(mut self, b_tilde: f64) -> Self {
        self.b_tilde = Some(b_tilde);
        self
    }
}

/// `2B/(e^{2aπ/h}−1) + B̃·max(h^{1−m0}, h)·e^{−2aπ/h}`; the second term is absent for `m0 = 1`.
pub fn poisson_error_bound(profile: &FourierDecayProfile, h: f64) -> f64 {
    let x = 2.0 * profile.a * PI / h;
    let simple = 2.0 * profile.b / x.exp_m1();
    if profile.m0 == 1 {
        return simple;
    }
    let bt = profile.b_tilde.unwrap_or(profile.b);
    let pref = h.powi(1 - profile.m0 as i32).max(h);
    simple + bt * pref * (-x).exp()
}
