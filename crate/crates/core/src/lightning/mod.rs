//! Lightning-plus-polynomial approximants of `g(z)·z^α` and `g(z)·z^α log z`
//! on sectors.

mod approximant;
mod poles;
mod residues;

pub use approximant::{
    build_lp, eval_approximant, ls_samples, sup_error, LightningApproximant, LpMode, PolyPart,
    POLE_GUARD, SAMPLES_PER_POLE,
};
pub use poles::{cluster_poles, default_n2, eta, sigma_opt, DiscretizationPlan, PoleSet};
pub use residues::{
    analytic_residues_pow, analytic_residues_pow_log, lagrange_term, quadrature_sum,
    rectangular_sum, regrouped_sum,
};
