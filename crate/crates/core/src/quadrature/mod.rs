//! Integral representations, trapezoid sums on the real line and their
//! Poisson-summation error theory.

mod closed_form;
mod fourier;
pub mod gk;
mod representation;
mod trapezoid;

pub use closed_form::{
    closed_form_e1, closed_form_e2, closed_form_i1, closed_form_i2, closed_form_sinc,
    poisson_error_bound, FourierDecayProfile,
};
pub use fourier::{fourier_decay_fit, fourier_transform, FourierFit, RESOLUTION_FLOOR};
pub use representation::{integral_rep_pow, integral_rep_pow_log};
pub use trapezoid::{trapezoid_real_line, TrapezoidResult, MAX_EM_ORDER};
